// spinnet.hpp — convenience include for the whole library.
#pragma once

#include "spinnet/analysis.hpp"
#include "spinnet/cli.hpp"
#include "spinnet/config.hpp"
#include "spinnet/couplings.hpp"
#include "spinnet/dynamics.hpp"
#include "spinnet/hamiltonian.hpp"
#include "spinnet/topology.hpp"
#include "spinnet/verify.hpp"
#include "spinnet/wavefunction.hpp"

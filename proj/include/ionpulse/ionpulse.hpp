// Umbrella header.

#pragma once

#include "ionpulse/chain_spec.hpp"
#include "ionpulse/cmatrix.hpp"
#include "ionpulse/compiler.hpp"
#include "ionpulse/cooling.hpp"
#include "ionpulse/errors.hpp"
#include "ionpulse/gates.hpp"
#include "ionpulse/hamiltonian.hpp"
#include "ionpulse/hybrid_state.hpp"
#include "ionpulse/pulses.hpp"
#include "ionpulse/readout.hpp"
#include "ionpulse/rng.hpp"
#include "ionpulse/schedule_io.hpp"
#include "ionpulse/version.hpp"

#pragma once

// Umbrella header for the whole library.

#include "hzx/circuit.hpp"
#include "hzx/errors.hpp"
#include "hzx/flatten.hpp"
#include "hzx/hamiltonian.hpp"
#include "hzx/harness.hpp"
#include "hzx/pauli.hpp"
#include "hzx/rewrite.hpp"
#include "hzx/rng.hpp"
#include "hzx/serialize.hpp"
#include "hzx/tableau.hpp"

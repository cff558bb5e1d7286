// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.
//
// Umbrella header pulling in the whole library.

#pragma once

#include "bounds.hpp"
#include "channels.hpp"
#include "complex_matrix.hpp"
#include "csv.hpp"
#include "experiments.hpp"
#include "linalg.hpp"
#include "oracles.hpp"
#include "parallel.hpp"
#include "philox.hpp"
#include "quadrature.hpp"
#include "quantizer.hpp"
#include "specfun.hpp"
#include "svg.hpp"
#include "verify.hpp"

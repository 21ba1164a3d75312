// deflcp - deflated semismooth solvers for complementarity problems
// SPDX-License-Identifier: Apache-2.0
#ifndef DEFLCP_DEFLCP_HPP
#define DEFLCP_DEFLCP_HPP

#include "deflcp/types.hpp"
#include "deflcp/fischer_burmeister.hpp"
#include "deflcp/residual.hpp"
#include "deflcp/deflation.hpp"
#include "deflcp/solver.hpp"
#include "deflcp/driver.hpp"
#include "deflcp/problems.hpp"

#endif  // DEFLCP_DEFLCP_HPP

// SPDX-License-Identifier: Apache-2.0
//
// mmwave-pdp: first-order reflection channel model for outdoor mmWave links
// Copyright (C) 2026 The mmwave-pdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMW_NUMERICS_HPP
#define MMW_NUMERICS_HPP

#include <functional>

namespace mmw
{

struct QuadratureSpec
{
    double abs_tol = 1e-12;
    double rel_tol = 1e-8;
    int max_depth = 40;
};

struct QuadratureResult
{
    double value = 0;
    double error = 0;
    bool converged = false;
    int evaluations = 0;
};

// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b]. The panel with
// the largest |K15 - G7| is bisected until the summed estimate drops below
// max(abs_tol, rel_tol * |value|). A panel that would exceed max_depth
// bisections stops the refinement with converged = false; value and error then
// hold the partial result. Deterministic for fixed inputs. Throws DomainError
// unless a < b and the spec is valid.
QuadratureResult integrate(const std::function<double(double)> &f, double a, double b,
                           const QuadratureSpec &spec = {});

// As integrate(), but throws ConvergenceError instead of returning an
// unconverged result.
double integrate_or_throw(const std::function<double(double)> &f, double a, double b,
                          const QuadratureSpec &spec = {});

// atanh(x) = 0.5 ln((1 + x) / (1 - x)), throwing DomainError for |x| >= 1.
double atanh_guarded(double x);

} // namespace mmw

#endif

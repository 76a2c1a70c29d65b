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

#include "mmw/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "mmw/errors.hpp"

namespace mmw
{
namespace
{

struct Panel
{
    double a;
    double b;
    double value;
    double error;
    int depth;
};

struct LargerError
{
    bool operator()(const Panel &x, const Panel &y) const
    {
        // Ties broken on position so the refinement order never depends on
        // the heap implementation.
        return x.error < y.error || (x.error == y.error && x.a > y.a);
    }
};

// Nodes at even indices of the Kronrod table are the Gauss nodes.
Panel kronrod_panel(const std::function<double(double)> &f, double a, double b, int depth)
{
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using Gauss = boost::math::quadrature::gauss<double, 7>;
    const auto &x = Kronrod::abscissa();
    const auto &wk = Kronrod::weights();
    const auto &wg = Gauss::weights();

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double kronrod = f0 * wk[0];
    double gauss = f0 * wg[0];
    for (std::size_t i = 1; i < x.size(); ++i)
    {
        const double pair = f(mid - half * x[i]) + f(mid + half * x[i]);
        kronrod += pair * wk[i];
        if (i % 2 == 0)
            gauss += pair * wg[i / 2];
    }
    kronrod *= half;
    gauss *= half;
    return Panel{a, b, kronrod, std::abs(kronrod - gauss), depth};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)> &f, double a, double b, const QuadratureSpec &spec)
{
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError(fmt::format("integrate: need finite a < b, got [{}, {}]", a, b));
    if (!(spec.abs_tol > 0) || !(spec.rel_tol > 0) || spec.max_depth < 1)
        throw DomainError("integrate: tolerances must be positive and max_depth >= 1");

    std::priority_queue<Panel, std::vector<Panel>, LargerError> panels;
    panels.push(kronrod_panel(f, a, b, 0));
    QuadratureResult result;
    result.evaluations = 15;

    const auto totals = [&panels] {
        // Sum in position order for reproducible rounding.
        auto copy = panels;
        std::vector<Panel> all;
        all.reserve(copy.size());
        while (!copy.empty())
        {
            all.push_back(copy.top());
            copy.pop();
        }
        std::sort(all.begin(), all.end(), [](const Panel &x, const Panel &y) { return x.a < y.a; });
        double value = 0;
        double error = 0;
        for (const auto &p : all)
        {
            value += p.value;
            error += p.error;
        }
        return std::pair{value, error};
    };

    double value = panels.top().value;
    double error = panels.top().error;
    while (true)
    {
        if (!std::isfinite(value))
            throw DomainError("integrate: integrand is not finite on the interval");
        if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value)))
        {
            result.converged = true;
            break;
        }
        const Panel worst = panels.top();
        if (worst.depth >= spec.max_depth)
            break;
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = kronrod_panel(f, worst.a, mid, worst.depth + 1);
        const Panel right = kronrod_panel(f, mid, worst.b, worst.depth + 1);
        result.evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }

    std::tie(result.value, result.error) = totals();
    return result;
}

double integrate_or_throw(const std::function<double(double)> &f, double a, double b, const QuadratureSpec &spec)
{
    const QuadratureResult r = integrate(f, a, b, spec);
    if (!r.converged)
        throw ConvergenceError(fmt::format("integrate: no convergence on [{}, {}] within depth {} (value {}, error {})",
                                           a, b, spec.max_depth, r.value, r.error),
                               r.value, r.error);
    return r.value;
}

double atanh_guarded(double x)
{
    if (!(std::abs(x) < 1))
        throw DomainError(fmt::format("atanh_guarded: |x| must be < 1, got {}", x));
    return std::atanh(x);
}

} // namespace mmw

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

#ifndef MMW_ERRORS_HPP
#define MMW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mmw
{

// Argument outside the domain of a model quantity (e.g. a delay shorter than
// the line-of-sight delay).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Adaptive quadrature ran out of subdivision depth. The partial result is kept
// so callers can decide whether it is usable.
class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string &what, double partial_value, double error_estimate)
        : std::runtime_error(what), partial_value_(partial_value), error_estimate_(error_estimate)
    {
    }

    double partial_value() const noexcept { return partial_value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double partial_value_;
    double error_estimate_;
};

} // namespace mmw

#endif

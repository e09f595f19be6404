// Copyright 2026 The nlmagic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLMAGIC_ERRORS_HPP
#define NLMAGIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlmagic {

// Argument outside the mathematical domain of an operation (angles, probabilities, sizes).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Subsystem selections that are empty, full, repeated or out of range.
class InvalidSubsystemError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedGateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A measured quantity is unreachable under the assumed noise model.
class OutOfModelError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Two quantities that must be ordered are not (e.g. non-local magic above total magic).
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Sample statistics too poor to form an estimate (non-positive means under a logarithm).
class UndersampledDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string &what, int iterations, double last_change)
        : std::runtime_error(what), iterations(iterations), last_change(last_change) {}
    int iterations;
    double last_change;
};

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nlmagic

#endif

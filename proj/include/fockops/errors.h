// Copyright 2026 The fockops Authors
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

#ifndef FOCKOPS_ERRORS_H
#define FOCKOPS_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fockops {

// Bad arguments (gamma <= 0, n >= D, ...) are reported with
// std::invalid_argument. The types below carry domain failures.

/// A creation-type map would push population past the top level.
class TruncationOverflow : public std::runtime_error {
   public:
    TruncationOverflow(const std::string &what, double lost_mass)
        : std::runtime_error(what), lost_mass_(lost_mass) {
    }
    double lost_mass() const noexcept {
        return lost_mass_;
    }

   private:
    double lost_mass_;
};

/// The cutoff is too small for the requested state or scan.
class TruncationInsufficient : public std::runtime_error {
   public:
    TruncationInsufficient(const std::string &what, double tail_mass, std::size_t required_dim)
        : std::runtime_error(what), tail_mass_(tail_mass), required_dim_(required_dim) {
    }
    double tail_mass() const noexcept {
        return tail_mass_;
    }
    /// Estimated cutoff meeting the tail tolerance (0 if unknown).
    std::size_t required_dim() const noexcept {
        return required_dim_;
    }

   private:
    double tail_mass_;
    std::size_t required_dim_;
};

/// tr[K rho K^dag] is too small to define a conditional output.
class VanishingProbability : public std::runtime_error {
   public:
    VanishingProbability(const std::string &what, double probability)
        : std::runtime_error(what), probability_(probability) {
    }
    double probability() const noexcept {
        return probability_;
    }

   private:
    double probability_;
};

/// An analytic bound was requested outside the regime where it holds.
class RegimeViolation : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

class DimensionMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class InvalidState : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fockops

#endif

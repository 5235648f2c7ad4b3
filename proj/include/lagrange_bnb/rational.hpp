// Copyright 2026 the lagrange-bnb authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lbnb {

/// Exact rational with int64 numerator/denominator. Intermediate products are
/// computed in 128-bit; a result that does not fit back into int64 throws
/// instead of silently losing precision. Denominators in this codebase are
/// powers of two (multiplier snapping), so normalization stays cheap.
class Rational {
  public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool is_integer() const { return den_ == 1; }

    /// Smallest integer >= *this.
    std::int64_t ceil() const {
        if (den_ == 1) return num_;
        std::int64_t q = num_ / den_;
        if (num_ > 0 && num_ % den_ != 0) ++q;
        return q;
    }

    /// Largest integer <= *this.
    std::int64_t floor() const {
        if (den_ == 1) return num_;
        std::int64_t q = num_ / den_;
        if (num_ < 0 && num_ % den_ != 0) --q;
        return q;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 num = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 den = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(num, den);
    }

    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 num = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
        __int128 den = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(num, den);
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        __int128 num = static_cast<__int128>(a.num_) * b.num_;
        __int128 den = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(num, den);
    }

    Rational operator-() const {
        Rational out;
        out.num_ = -num_;
        out.den_ = den_;
        return out;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    static Rational from_wide(__int128 num, __int128 den) {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        __int128 g = gcd_wide(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr __int128 kMax = INT64_MAX;
        constexpr __int128 kMin = INT64_MIN;
        if (num > kMax || num < kMin || den > kMax) {
            throw std::overflow_error("rational overflow");
        }
        Rational out;
        out.num_ = static_cast<std::int64_t>(num);
        out.den_ = static_cast<std::int64_t>(den);
        return out;
    }

    static __int128 gcd_wide(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        Rational r = from_wide(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace lbnb

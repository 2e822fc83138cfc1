#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace slspec {

using cplx = std::complex<double>;

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// Real number or signed infinity; infinity is a tag, never a sentinel value.
class ExtReal {
public:
    static ExtReal finite(double v) { return ExtReal(v, 0); }
    static ExtReal pos_inf() { return ExtReal(0.0, 1); }
    static ExtReal neg_inf() { return ExtReal(0.0, -1); }

    bool is_finite() const { return inf_ == 0; }
    int infinity_sign() const { return inf_; }
    double value() const;
    /// Value for ordering comparisons (±infinity maps to ±HUGE_VAL).
    double as_double() const;

    friend bool operator==(const ExtReal&, const ExtReal&) = default;

private:
    ExtReal(double v, int inf) : v_(v), inf_(inf) {}
    double v_;
    int inf_;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

}  // namespace slspec

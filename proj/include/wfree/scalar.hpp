#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "wfree/error.hpp"

namespace wfree {

using Rat = mpq_class;
using Int = mpz_class;

Rat parse_rat(const std::string& s);
std::string to_string(const Rat& q);

// dense univariate polynomial over Q, coefficients low to high, no trailing zeros
class Poly {
public:
    Poly() = default;
    Poly(const Rat& c);
    explicit Poly(std::vector<Rat> coeffs);
    static Poly var();

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rat coeff(int i) const;
    const Rat& lead() const { return c_.back(); }
    const std::vector<Rat>& coeffs() const { return c_; }

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly scaled(const Rat& s) const;
    Rat eval(const Rat& x) const;
    Poly compose(const Poly& inner) const;
    std::string str(const char* var = "t") const;

    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
    static Poly gcd(Poly a, Poly b);

    int compare(const Poly& o) const;

private:
    void trim();
    std::vector<Rat> c_;
};

// element of Q(t); canonical: gcd(num, den) = 1, den monic
class RatFun {
public:
    RatFun() : num_(), den_(Rat(1)) {}
    RatFun(long v) : RatFun(Rat(v)) {}
    RatFun(int v) : RatFun(Rat(v)) {}
    RatFun(const Rat& v);
    RatFun(const Poly& p) : num_(p), den_(Rat(1)) {}
    RatFun(Poly num, Poly den);
    static RatFun t();

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_one() const;
    Rat constant() const;  // throws unless is_constant()
    bool is_integer() const;

    RatFun operator-() const;
    RatFun& operator+=(const RatFun& o);
    RatFun& operator-=(const RatFun& o);
    RatFun& operator*=(const RatFun& o);
    RatFun& operator/=(const RatFun& o);
    friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
    friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
    friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
    friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }
    friend bool operator<(const RatFun& a, const RatFun& b) { return a.compare(b) < 0; }
    int compare(const RatFun& o) const;

    RatFun pow(int e) const;
    Rat eval(const Rat& x) const;
    RatFun substitute(const RatFun& x) const;
    std::string str() const;

private:
    void normalize();
    Poly num_;
    Poly den_;
};

enum class ArithOp { Add, Sub, Mul, Div };
RatFun field_arithmetic(const RatFun& a, const RatFun& b, ArithOp op);
Rat evaluate(const RatFun& f, const Rat& x);
std::vector<Rat> linear_zeros(const RatFun& f);
RatFun normalize(const RatFun& f);

// rational expression in t: numbers, t, + - * / ^ and parentheses
RatFun parse_ratfun(const std::string& s);

}  // namespace wfree

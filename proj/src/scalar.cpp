#include "wfree/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wfree {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::PoleAtPoint: return "PoleAtPoint";
        case Errc::DegreeTooHigh: return "DegreeTooHigh";
        case Errc::AsymmetricPairing: return "AsymmetricPairing";
        case Errc::UnpairedFermionHalf: return "UnpairedFermionHalf";
        case Errc::UnknownSpecies: return "UnknownSpecies";
        case Errc::NonIntegralExponent: return "NonIntegralExponent";
        case Errc::NonSymmetric: return "NonSymmetric";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::MomentumMismatch: return "MomentumMismatch";
        case Errc::ZeroK1: return "ZeroK1";
        case Errc::ExcludedLevel: return "ExcludedLevel";
        case Errc::ParseError: return "ParseError";
        case Errc::ResourceLimit: return "ResourceLimit";
        case Errc::IoError: return "IoError";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

Rat parse_rat(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw Error(Errc::ParseError, "empty rational");
    auto ok = [](const std::string& x, bool allow_sign) {
        size_t i = 0;
        if (allow_sign && i < x.size() && (x[i] == '-' || x[i] == '+')) ++i;
        if (i == x.size()) return false;
        for (; i < x.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
        return true;
    };
    auto slash = t.find('/');
    std::string p = t.substr(0, slash);
    std::string q = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!ok(p, true) || !ok(q, false)) throw Error(Errc::ParseError, "bad rational '" + s + "'");
    if (p[0] == '+') p = p.substr(1);
    Int qi(q);
    if (qi == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + s + "'");
    Rat r(Int(p), qi);
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& q) { return q.get_str(); }

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rat& c) {
    if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::var() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
    return c_[i];
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
}

Poly Poly::scaled(const Rat& s) const {
    if (s == 0) return Poly();
    Poly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

Rat Poly::eval(const Rat& x) const {
    Rat acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::compose(const Poly& inner) const {
    Poly acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + Poly(c_[i]);
    return acc;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
    r = a;
    std::vector<Rat> qc(std::max(0, a.degree() - b.degree() + 1));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int sh = r.degree() - b.degree();
        Rat f = r.lead() / b.lead();
        qc[sh] = f;
        for (int i = 0; i <= b.degree(); ++i) r.c_[i + sh] -= f * b.c_[i];
        r.trim();
    }
    q = Poly(std::move(qc));
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(1 / a.lead());
}

int Poly::compare(const Poly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size() ? -1 : 1;
    for (size_t i = c_.size(); i-- > 0;) {
        int s = cmp(c_[i], o.c_[i]);
        if (s) return s < 0 ? -1 : 1;
    }
    return 0;
}

std::string Poly::str(const char* var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rat& a = c_[i];
        if (a == 0) continue;
        Rat mag = abs(a);
        if (a < 0)
            os << "-";
        else if (!first)
            os << "+";
        first = false;
        if (i == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

// ---------------------------------------------------------------- RatFun

RatFun::RatFun(const Rat& v) : num_(v), den_(Rat(1)) {}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(Errc::DivisionByZero, "rational function with zero denominator");
    normalize();
}

RatFun RatFun::t() { return RatFun(Poly::var()); }

void RatFun::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(Rat(1));
        return;
    }
    if (den_.is_constant()) {
        Rat d = den_.coeff(0);
        if (d != 1) {
            num_ = num_.scaled(1 / d);
            den_ = Poly(Rat(1));
        }
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (!g.is_constant()) {
        Poly q, r;
        Poly::divmod(num_, g, q, r);
        num_ = q;
        Poly::divmod(den_, g, q, r);
        den_ = q;
    }
    Rat l = den_.lead();
    if (l != 1) {
        num_ = num_.scaled(1 / l);
        den_ = den_.scaled(1 / l);
    }
}

bool RatFun::is_one() const { return den_.degree() == 0 && num_.degree() == 0 && num_.coeff(0) == 1; }

Rat RatFun::constant() const {
    if (!is_constant()) throw Error(Errc::InvalidArgument, "expected a constant, got " + str());
    return num_.coeff(0);
}

bool RatFun::is_integer() const {
    if (!is_constant()) return false;
    return num_.coeff(0).get_den() == 1;
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun& RatFun::operator+=(const RatFun& o) {
    if (den_.degree() == 0 && o.den_.degree() == 0) {
        num_ = num_ + o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ = num_ + o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) { return *this += -o; }

RatFun& RatFun::operator*=(const RatFun& o) {
    if (den_.degree() == 0 && o.den_.degree() == 0) {
        num_ = num_ * o.num_;
        return *this;
    }
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatFun& RatFun::operator/=(const RatFun& o) {
    if (o.is_zero()) throw Error(Errc::DivisionByZero, "division by zero rational function");
    if (o.is_constant() && den_.degree() == 0) {
        num_ = num_.scaled(1 / o.num_.coeff(0));
        return *this;
    }
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
}

int RatFun::compare(const RatFun& o) const {
    int c = den_.compare(o.den_);
    if (c) return c;
    return num_.compare(o.num_);
}

RatFun RatFun::pow(int e) const {
    if (e < 0) return RatFun(1) / pow(-e);
    RatFun r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Rat RatFun::eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) throw Error(Errc::PoleAtPoint, "pole of " + str() + " at t = " + x.get_str());
    return num_.eval(x) / d;
}

RatFun RatFun::substitute(const RatFun& x) const {
    auto sub = [&](const Poly& p) {
        RatFun acc;
        for (int i = p.degree(); i >= 0; --i) acc = acc * x + RatFun(p.coeff(i));
        return acc;
    };
    return sub(num_) / sub(den_);
}

std::string RatFun::str() const {
    if (den_.degree() == 0) {
        if (num_.is_constant()) return num_.coeff(0).get_str();
    }
    // integer-coefficient presentation
    Int l = 1;
    for (auto* p : {&num_, &den_})
        for (auto& c : p->coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Int> n, d;
    Int g = 0;
    for (auto& c : num_.coeffs()) {
        Rat v = c * l;
        n.push_back(v.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    }
    for (auto& c : den_.coeffs()) {
        Rat v = c * l;
        d.push_back(v.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    }
    std::vector<Rat> nr, dr;
    for (auto& x : n) nr.emplace_back(Int(x / g));
    for (auto& x : d) dr.emplace_back(Int(x / g));
    Poly pn(nr), pd(dr);
    auto terms = [](const Poly& p) {
        int k = 0;
        for (auto& c : p.coeffs())
            if (c != 0) ++k;
        return k;
    };
    std::string ns = pn.str(), ds = pd.str();
    if (pd.is_constant() && pd.coeff(0) == 1) return ns;
    if (terms(pn) > 1) ns = "(" + ns + ")";
    if (!pd.is_constant()) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

RatFun field_arithmetic(const RatFun& a, const RatFun& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
    }
    return {};
}

Rat evaluate(const RatFun& f, const Rat& x) { return f.eval(x); }

RatFun normalize(const RatFun& f) { return RatFun(f.num(), f.den()); }

namespace {

bool rat_sqrt(const Rat& q, Rat& out) {
    if (q < 0) return false;
    Int n = q.get_num(), d = q.get_den();
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    if (rn * rn != n || rd * rd != d) return false;
    out = Rat(rn, rd);
    return true;
}

}  // namespace

std::vector<Rat> linear_zeros(const RatFun& f) {
    const Poly& p = f.num();
    if (p.degree() > 2)
        throw Error(Errc::DegreeTooHigh, "numerator degree " + std::to_string(p.degree()) + " > 2");
    std::vector<Rat> roots;
    if (p.degree() == 1) {
        roots.push_back(-p.coeff(0) / p.coeff(1));
    } else if (p.degree() == 2) {
        Rat a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
        Rat s;
        if (rat_sqrt(b * b - 4 * a * c, s)) {
            roots.push_back((-b - s) / (2 * a));
            roots.push_back((-b + s) / (2 * a));
        }
    }
    std::vector<Rat> out;
    for (auto& r : roots) {
        if (f.den().eval(r) == 0) continue;
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- parser

namespace {

struct RatParser {
    const std::string& s;
    size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& m) {
        throw Error(Errc::ParseError, m + " at position " + std::to_string(i) + " in '" + s + "'");
    }
    bool atom_start() {
        ws();
        return i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == 't' || s[i] == '(');
    }
    RatFun expr() {
        RatFun acc;
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                break;
        }
        return acc;
    }
    RatFun term() {
        RatFun acc = power();
        for (;;) {
            if (eat('*'))
                acc *= power();
            else if (eat('/'))
                acc /= power();
            else if (atom_start())
                acc *= power();
            else
                break;
        }
        return acc;
    }
    RatFun power() {
        RatFun b = atom();
        if (eat('^')) {
            bool neg = eat('-');
            ws();
            size_t st = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (st == i) fail("expected exponent");
            int e = std::stoi(s.substr(st, i - st));
            b = b.pow(neg ? -e : e);
        }
        return b;
    }
    RatFun atom() {
        ws();
        if (i >= s.size()) fail("unexpected end");
        if (s[i] == '-') {
            ++i;
            return -atom();
        }
        if (s[i] == '(') {
            ++i;
            RatFun r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (s[i] == 't') {
            ++i;
            return RatFun::t();
        }
        size_t st = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (st == i) fail("unexpected character");
        return RatFun(Rat(Int(s.substr(st, i - st))));
    }
};

}  // namespace

RatFun parse_ratfun(const std::string& s) {
    RatParser p{s};
    RatFun r = p.expr();
    p.ws();
    if (p.i != s.size()) p.fail("trailing input");
    return r;
}

}  // namespace wfree

#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wfree/fock.hpp"

namespace wfree {

using DirTerms = std::vector<std::pair<std::string, RatFun>>;

class FieldExpr {
public:
    enum class Tag { Gen, Deriv, NormOrd, Scale, Sum, Exp };

    struct Node {
        Tag tag;
        std::string name;                        // Gen
        int order = 0;                           // Deriv
        RatFun coef;                             // Scale, Exp coefficient c
        std::vector<FieldExpr> kids;             // Deriv, NormOrd (2), Scale, Sum
        DirTerms dir;                            // Exp direction
        bool explicit_shift = false;             // Exp
        DirTerms shift;                          // Exp: zero-mode eigenvalue shift by species name
    };

    FieldExpr() = default;
    const Node& node() const { return *p_; }
    bool valid() const { return static_cast<bool>(p_); }
    Tag tag() const { return p_->tag; }

    static FieldExpr gen(const std::string& name);
    static FieldExpr deriv(const FieldExpr& e, int order = 1);
    static FieldExpr nord(const FieldExpr& a, const FieldExpr& b);
    static FieldExpr nord(const std::vector<FieldExpr>& factors);  // right-associative
    static FieldExpr scale(const RatFun& c, const FieldExpr& e);
    static FieldExpr sum(const std::vector<FieldExpr>& terms);
    static FieldExpr expo(const RatFun& c, const DirTerms& dir);
    static FieldExpr expo(const RatFun& c, const DirTerms& dir, const DirTerms& shift);
    static FieldExpr zero() { return sum({}); }

    // sum of species with coefficients, e.g. lin({{"a1",1},{"a2",1}})
    static FieldExpr lin(const DirTerms& terms);

    std::string str() const;

private:
    explicit FieldExpr(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
    std::shared_ptr<const Node> p_;
};

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator-(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator-(const FieldExpr& a);
FieldExpr operator*(const RatFun& c, const FieldExpr& e);

FieldExpr parse_field(const std::string& text);

class LinComb {
public:
    using Map = std::map<FockState, RatFun>;
    void add(const FockState& s, const RatFun& c);
    void add(const LinComb& o, const RatFun& scale = RatFun(1));
    bool empty() const { return m_.empty(); }
    size_t size() const { return m_.size(); }
    const Map& terms() const { return m_; }
    Map::const_iterator begin() const { return m_.begin(); }
    Map::const_iterator end() const { return m_.end(); }
    RatFun coeff(const FockState& s) const;
    LinComb scaled(const RatFun& c) const;
    bool operator==(const LinComb& o) const { return m_ == o.m_; }
    bool operator!=(const LinComb& o) const { return !(m_ == o.m_); }
    LinComb operator-(const LinComb& o) const;
    std::string str(const System& sys) const;

private:
    Map m_;
};

FockState vacuum(const System& sys);
LinComb single(const FockState& s, const RatFun& c = RatFun(1));

// precompiled form of a FieldExpr over one system
class Compiled;
using CompiledP = std::shared_ptr<const Compiled>;
CompiledP compile(const System& sys, const FieldExpr& f);

int parity_of(const System& sys, const FieldExpr& f);
Momentum shift_of(const System& sys, const FieldExpr& f);
int charge_of(const System& sys, const FieldExpr& f);
// out-degree minus in-degree of f_(n) on momentum mu is dshift_const(mu) - n
int dshift_const(const System& sys, const FieldExpr& f, const Momentum& mu);

LinComb mode_apply(const System& sys, const FieldExpr& f, long n, const FockState& s);
LinComb mode_apply(const System& sys, const CompiledP& f, long n, const FockState& s);
LinComb mode_apply(const System& sys, const CompiledP& f, long n, const LinComb& v);

using OPE = std::map<int, LinComb>;
OPE ope_singular(const System& sys, const FieldExpr& a, const FieldExpr& b, int max_pole = 0);
LinComb state_of_field(const System& sys, const FieldExpr& f);
LinComb l0_apply(const System& sys, const FieldExpr& conformal, const FockState& s);

using Matrix = std::vector<std::vector<RatFun>>;
Matrix current_gram(const System& sys, const std::vector<FieldExpr>& currents);

}  // namespace wfree

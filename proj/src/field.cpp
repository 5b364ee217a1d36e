#include "wfree/field.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <mutex>
#include <sstream>

namespace wfree {

// ------------------------------------------------------------ builders

FieldExpr FieldExpr::gen(const std::string& name) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::Gen;
    n->name = name;
    return FieldExpr(n);
}

FieldExpr FieldExpr::deriv(const FieldExpr& e, int order) {
    if (order < 1) throw Error(Errc::InvalidArgument, "derivative order must be >= 1");
    if (e.tag() == Tag::Deriv) return deriv(e.node().kids[0], order + e.node().order);
    auto n = std::make_shared<Node>();
    n->tag = Tag::Deriv;
    n->order = order;
    n->kids = {e};
    return FieldExpr(n);
}

FieldExpr FieldExpr::nord(const FieldExpr& a, const FieldExpr& b) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::NormOrd;
    n->kids = {a, b};
    return FieldExpr(n);
}

FieldExpr FieldExpr::nord(const std::vector<FieldExpr>& f) {
    if (f.empty()) throw Error(Errc::InvalidArgument, "empty normally ordered product");
    FieldExpr acc = f.back();
    for (size_t i = f.size() - 1; i-- > 0;) acc = nord(f[i], acc);
    return acc;
}

FieldExpr FieldExpr::scale(const RatFun& c, const FieldExpr& e) {
    if (c.is_one()) return e;
    if (e.tag() == Tag::Scale) return scale(c * e.node().coef, e.node().kids[0]);
    auto n = std::make_shared<Node>();
    n->tag = Tag::Scale;
    n->coef = c;
    n->kids = {e};
    return FieldExpr(n);
}

FieldExpr FieldExpr::sum(const std::vector<FieldExpr>& terms) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::Sum;
    for (auto& t : terms) {
        if (t.tag() == Tag::Sum)
            for (auto& k : t.node().kids) n->kids.push_back(k);
        else
            n->kids.push_back(t);
    }
    if (n->kids.size() == 1) return n->kids[0];
    return FieldExpr(n);
}

FieldExpr FieldExpr::expo(const RatFun& c, const DirTerms& dir) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::Exp;
    n->coef = c;
    for (auto& [k, v] : dir)
        if (!v.is_zero()) n->dir.emplace_back(k, v);
    return FieldExpr(n);
}

FieldExpr FieldExpr::expo(const RatFun& c, const DirTerms& dir, const DirTerms& shift) {
    FieldExpr e = expo(c, dir);
    auto n = std::make_shared<Node>(e.node());
    n->explicit_shift = true;
    n->shift = shift;
    return FieldExpr(n);
}

FieldExpr FieldExpr::lin(const DirTerms& terms) {
    std::vector<FieldExpr> out;
    for (auto& [k, v] : terms)
        if (!v.is_zero()) out.push_back(scale(v, gen(k)));
    return sum(out);
}

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) { return FieldExpr::sum({a, b}); }
FieldExpr operator-(const FieldExpr& a) { return FieldExpr::scale(RatFun(-1), a); }
FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) { return a + (-b); }
FieldExpr operator*(const RatFun& c, const FieldExpr& e) { return FieldExpr::scale(c, e); }

// ------------------------------------------------------------ LinComb

void LinComb::add(const FockState& s, const RatFun& c) {
    if (c.is_zero()) return;
    auto it = m_.find(s);
    if (it == m_.end()) {
        m_.emplace(s, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) m_.erase(it);
}

void LinComb::add(const LinComb& o, const RatFun& scale) {
    if (scale.is_zero()) return;
    for (auto& [s, c] : o.m_) add(s, scale.is_one() ? c : c * scale);
}

RatFun LinComb::coeff(const FockState& s) const {
    auto it = m_.find(s);
    return it == m_.end() ? RatFun() : it->second;
}

LinComb LinComb::scaled(const RatFun& c) const {
    LinComb r;
    r.add(*this, c);
    return r;
}

LinComb LinComb::operator-(const LinComb& o) const {
    LinComb r = *this;
    r.add(o, RatFun(-1));
    return r;
}

std::string LinComb::str(const System& sys) const {
    if (m_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [s, c] : m_) {
        if (!first) os << " + ";
        first = false;
        if (!c.is_one()) os << "(" << c.str() << ")*";
        os << sys.state_str(s);
    }
    return os.str();
}

FockState vacuum(const System& sys) { return FockState{sys.zero_momentum(), {}}; }

LinComb single(const FockState& s, const RatFun& c) {
    LinComb r;
    r.add(s, c);
    return r;
}

// ------------------------------------------------------------ compiled form

class Compiled {
public:
    using Tag = FieldExpr::Tag;
    Tag tag = Tag::Sum;
    int sp = -1;
    int order = 0;
    RatFun coef;
    std::vector<CompiledP> kids;
    int parity = 0;
    int charge = 0;
    Momentum shift;

    // exponential data
    std::vector<RatFun> dir;       // over heisenberg positions
    std::vector<RatFun> lam_pair;  // (dir|h_j)
    std::vector<Int> lat;
    bool has_lat = false;

    using Term = std::pair<std::vector<Mode>, RatFun>;
    mutable std::mutex mu;
    mutable std::vector<std::vector<Term>> creation;  // degree-a part of the creation exponential
};

namespace {

const int kNone = INT_MIN / 4;

int parity_sum(int a, int b) { return (a + b) & 1; }

CompiledP compile_rec(const System& sys, const FieldExpr& f) {
    auto c = std::make_shared<Compiled>();
    const auto& n = f.node();
    c->tag = n.tag;
    c->shift = sys.zero_momentum();
    switch (n.tag) {
        case FieldExpr::Tag::Gen: {
            c->sp = sys.index(n.name);
            c->parity = sys.is_odd(c->sp) ? 1 : 0;
            c->charge = sys.charge(c->sp);
            break;
        }
        case FieldExpr::Tag::Deriv:
        case FieldExpr::Tag::Scale: {
            auto k = compile_rec(sys, n.kids[0]);
            c->order = n.order;
            c->coef = n.coef;
            c->parity = k->parity;
            c->charge = k->charge;
            c->shift = k->shift;
            c->kids = {k};
            break;
        }
        case FieldExpr::Tag::NormOrd: {
            auto a = compile_rec(sys, n.kids[0]);
            auto b = compile_rec(sys, n.kids[1]);
            c->parity = parity_sum(a->parity, b->parity);
            c->charge = a->charge + b->charge;
            c->shift = a->shift + b->shift;
            c->kids = {a, b};
            break;
        }
        case FieldExpr::Tag::Sum: {
            for (size_t i = 0; i < n.kids.size(); ++i) {
                auto k = compile_rec(sys, n.kids[i]);
                if (i == 0) {
                    c->parity = k->parity;
                    c->charge = k->charge;
                    c->shift = k->shift;
                } else if (k->parity != c->parity || k->shift != c->shift || k->charge != c->charge) {
                    throw Error(Errc::InvalidArgument, "inhomogeneous sum " + f.str());
                }
                c->kids.push_back(k);
            }
            break;
        }
        case FieldExpr::Tag::Exp: {
            int h = sys.heis_count();
            c->coef = n.coef;
            c->dir.assign(h, RatFun());
            for (auto& [name, v] : n.dir) {
                int s = sys.index(name);
                if (sys.heis_pos(s) < 0)
                    throw Error(Errc::InvalidArgument, "exponential direction must be heisenberg: " + name);
                c->dir[sys.heis_pos(s)] += v;
            }
            c->lam_pair.assign(h, RatFun());
            for (int j = 0; j < h; ++j)
                for (int i = 0; i < h; ++i)
                    if (!c->dir[i].is_zero()) c->lam_pair[j] += c->dir[i] * sys.gram(i, j);
            if (n.explicit_shift) {
                for (auto& [name, v] : n.shift) {
                    int s = sys.index(name);
                    if (sys.heis_pos(s) < 0) throw Error(Errc::InvalidArgument, "shift on non-heisenberg " + name);
                    c->shift.eig[sys.heis_pos(s)] += v;
                }
            } else {
                for (int j = 0; j < h; ++j) c->shift.eig[j] = c->coef * c->lam_pair[j];
            }
            if (sys.has_lattice()) {
                c->has_lat = true;
                for (int pos : sys.lattice()) {
                    RatFun v = c->coef * c->dir[pos];
                    if (!v.is_integer())
                        throw Error(Errc::NonIntegralExponent,
                                    "lattice part of " + f.str() + " is not integral");
                    c->lat.push_back(v.constant().get_num());
                }
                c->parity = sys.lattice_norm_parity(c->lat);
            }
            break;
        }
    }
    return c;
}

Int exp_power(const Compiled& e, const Momentum& mu) {
    RatFun p;
    for (size_t i = 0; i < e.dir.size(); ++i)
        if (!e.dir[i].is_zero()) p += e.dir[i] * mu.eig[i];
    p *= e.coef;
    if (!p.is_integer()) throw Error(Errc::NonIntegralExponent, "z-exponent " + p.str() + " is not an integer");
    return p.constant().get_num();
}

int cbound(const System& sys, const Compiled& c, const Momentum& mu) {
    switch (c.tag) {
        case FieldExpr::Tag::Gen: return sys.sp(c.sp).engine_weight - 1;
        case FieldExpr::Tag::Deriv: {
            int k = cbound(sys, *c.kids[0], mu);
            return k == kNone ? kNone : k + c.order;
        }
        case FieldExpr::Tag::Scale: return cbound(sys, *c.kids[0], mu);
        case FieldExpr::Tag::Sum: {
            int best = kNone;
            for (auto& k : c.kids) best = std::max(best, cbound(sys, *k, mu));
            return best;
        }
        case FieldExpr::Tag::NormOrd: {
            int b = cbound(sys, *c.kids[1], mu);
            if (b == kNone) return kNone;
            int a = cbound(sys, *c.kids[0], mu + c.kids[1]->shift);
            if (a == kNone) return kNone;
            return a + b + 1;
        }
        case FieldExpr::Tag::Exp: return static_cast<int>(-1 - exp_power(c, mu).get_si());
    }
    return kNone;
}

void apply_into(const System& sys, const Compiled& c, long n, const FockState& s, const RatFun& scale,
                LinComb& out);

void apply_gen(const System& sys, const Compiled& c, long n, const FockState& s, const RatFun& scale,
               LinComb& out) {
    int sp = c.sp;
    const Species& S = sys.sp(sp);
    if (n < 0) {
        std::vector<Mode> raw;
        raw.reserve(s.modes.size() + 1);
        raw.push_back({sp, static_cast<int>(-n)});
        raw.insert(raw.end(), s.modes.begin(), s.modes.end());
        Signed r = normal_form(sys, s.mu, std::move(raw));
        if (r.sign) out.add(r.state, r.sign > 0 ? scale : -scale);
        return;
    }
    if (S.kind == Kind::Heisenberg) {
        int hp = sys.heis_pos(sp);
        if (n == 0) {
            const RatFun& e = s.mu.eig[hp];
            if (!e.is_zero()) out.add(s, scale * e);
            return;
        }
        for (size_t i = 0; i < s.modes.size(); ++i) {
            const Mode& m = s.modes[i];
            if (m.depth != n) continue;
            int mp = sys.heis_pos(m.sp);
            if (mp < 0) continue;
            const RatFun& g = sys.gram(hp, mp);
            if (g.is_zero()) continue;
            FockState t{s.mu, {}};
            t.modes.reserve(s.modes.size() - 1);
            for (size_t j = 0; j < s.modes.size(); ++j)
                if (j != i) t.modes.push_back(s.modes[j]);
            out.add(t, scale * g * RatFun(n));
        }
        return;
    }
    int partner = sys.partner(sp);
    int odd_before = 0;
    bool odd = sys.is_odd(sp);
    for (size_t i = 0; i < s.modes.size(); ++i) {
        const Mode& m = s.modes[i];
        if (m.sp == partner && m.depth == n + 1) {
            FockState t{s.mu, {}};
            t.modes.reserve(s.modes.size() - 1);
            for (size_t j = 0; j < s.modes.size(); ++j)
                if (j != i) t.modes.push_back(s.modes[j]);
            int sign = sys.contraction(sp);
            if (odd && (odd_before & 1)) sign = -sign;
            out.add(t, sign > 0 ? scale : -scale);
        }
        if (sys.is_odd(m.sp)) ++odd_before;
    }
}

const std::vector<Compiled::Term>& creation_part(const System& sys, const Compiled& e, int a) {
    std::lock_guard<std::mutex> lock(e.mu);
    auto& S = e.creation;
    if (S.empty()) S.push_back({{std::vector<Mode>{}, RatFun(1)}});
    while (static_cast<int>(S.size()) <= a) {
        int d = static_cast<int>(S.size());
        std::map<std::vector<Mode>, RatFun> acc;
        RatFun pref = e.coef / RatFun(d);
        for (int k = 1; k <= d; ++k) {
            for (auto& [modes, coef] : S[d - k]) {
                for (size_t j = 0; j < e.dir.size(); ++j) {
                    if (e.dir[j].is_zero()) continue;
                    std::vector<Mode> m = modes;
                    m.push_back({sys.heis()[j], k});
                    std::sort(m.begin(), m.end());
                    RatFun v = pref * coef * e.dir[j];
                    auto it = acc.find(m);
                    if (it == acc.end())
                        acc.emplace(std::move(m), v);
                    else
                        it->second += v;
                }
            }
        }
        std::vector<Compiled::Term> row;
        for (auto& [m, v] : acc)
            if (!v.is_zero()) row.emplace_back(m, v);
        S.push_back(std::move(row));
    }
    return S[a];
}

void apply_exp(const System& sys, const Compiled& e, long n, const FockState& s, const RatFun& scale,
               LinComb& out) {
    Int p = exp_power(e, s.mu);
    int sign = 1;
    if (e.has_lat) {
        sign = sys.cocycle(e.lat, sys.lattice_coords(s.mu));
        if (e.parity) {
            int odd = 0;
            for (auto& m : s.modes)
                if (sys.is_odd(m.sp)) ++odd;
            if (odd & 1) sign = -sign;
        }
    }
    Momentum mu2 = s.mu + e.shift;
    // group heisenberg modes
    std::vector<Mode> other;
    std::vector<std::pair<Mode, int>> groups;
    for (auto& m : s.modes) {
        if (sys.heis_pos(m.sp) < 0) {
            other.push_back(m);
            continue;
        }
        if (!groups.empty() && groups.back().first == m)
            ++groups.back().second;
        else
            groups.push_back({m, 1});
    }
    long base = -n - 1 - p.get_si();
    std::vector<int> take(groups.size(), 0);
    std::vector<RatFun> contr(groups.size());
    for (size_t g = 0; g < groups.size(); ++g) contr[g] = -e.coef * e.lam_pair[sys.heis_pos(groups[g].first.sp)];

    auto emit = [&](const RatFun& coef, long b) {
        long a = base + b;
        if (a < 0) return;
        std::vector<Mode> rest = other;
        for (size_t g = 0; g < groups.size(); ++g)
            for (int k = take[g]; k < groups[g].second; ++k) rest.push_back(groups[g].first);
        const auto& cre = creation_part(sys, e, static_cast<int>(a));
        for (auto& [modes, v] : cre) {
            std::vector<Mode> m = rest;
            m.insert(m.end(), modes.begin(), modes.end());
            std::sort(m.begin(), m.end());
            out.add(FockState{mu2, std::move(m)}, sign > 0 ? scale * coef * v : -(scale * coef * v));
        }
    };
    // choose how many modes of each group to contract
    std::vector<RatFun> coefs(groups.size() + 1);
    std::function<void(size_t, RatFun, long)> rec = [&](size_t g, RatFun coef, long b) {
        if (g == groups.size()) {
            emit(coef, b);
            return;
        }
        int mult = groups[g].second;
        RatFun cpow(1);
        long binom = 1;
        for (int k = 0; k <= mult; ++k) {
            if (k > 0) {
                if (contr[g].is_zero()) break;
                cpow *= contr[g];
                binom = binom * (mult - k + 1) / k;
            }
            take[g] = k;
            rec(g + 1, coef * cpow * RatFun(binom), b + static_cast<long>(k) * groups[g].first.depth);
        }
        take[g] = 0;
    };
    rec(0, RatFun(1), 0);
}

void apply_into(const System& sys, const Compiled& c, long n, const FockState& s, const RatFun& scale,
                LinComb& out) {
    switch (c.tag) {
        case FieldExpr::Tag::Gen: apply_gen(sys, c, n, s, scale, out); return;
        case FieldExpr::Tag::Scale: apply_into(sys, *c.kids[0], n, s, scale * c.coef, out); return;
        case FieldExpr::Tag::Sum:
            for (auto& k : c.kids) apply_into(sys, *k, n, s, scale, out);
            return;
        case FieldExpr::Tag::Deriv: {
            Int f = 1;
            for (int i = 0; i < c.order; ++i) f *= Int(n - i);
            if (c.order & 1) f = -f;
            if (f == 0) return;
            apply_into(sys, *c.kids[0], n - c.order, s, scale * RatFun(Rat(f)), out);
            return;
        }
        case FieldExpr::Tag::Exp: apply_exp(sys, c, n, s, scale, out); return;
        case FieldExpr::Tag::NormOrd: {
            const Compiled& A = *c.kids[0];
            const Compiled& B = *c.kids[1];
            int d = sys.degree(s);
            int cb = cbound(sys, B, s.mu);
            if (cb != kNone) {
                long jmin = n - 1 - d - cb;
                for (long j = -1; j >= jmin; --j) {
                    LinComb t;
                    apply_into(sys, B, n - j - 1, s, RatFun(1), t);
                    for (auto& [st, cf] : t) apply_into(sys, A, j, st, scale * cf, out);
                }
            }
            int ca = cbound(sys, A, s.mu);
            if (ca != kNone) {
                RatFun sc = (A.parity & B.parity) ? -scale : scale;
                for (long j = 0; j <= d + ca; ++j) {
                    LinComb t;
                    apply_into(sys, A, j, s, RatFun(1), t);
                    for (auto& [st, cf] : t) apply_into(sys, B, n - j - 1, st, sc * cf, out);
                }
            }
            return;
        }
    }
}

}  // namespace

CompiledP compile(const System& sys, const FieldExpr& f) {
    if (!f.valid()) throw Error(Errc::InvalidArgument, "empty field expression");
    return compile_rec(sys, f);
}

int parity_of(const System& sys, const FieldExpr& f) { return compile(sys, f)->parity; }
Momentum shift_of(const System& sys, const FieldExpr& f) { return compile(sys, f)->shift; }
int charge_of(const System& sys, const FieldExpr& f) { return compile(sys, f)->charge; }

int dshift_const(const System& sys, const FieldExpr& f, const Momentum& mu) {
    return cbound(sys, *compile(sys, f), mu);
}

LinComb mode_apply(const System& sys, const CompiledP& f, long n, const FockState& s) {
    LinComb out;
    apply_into(sys, *f, n, s, RatFun(1), out);
    return out;
}

LinComb mode_apply(const System& sys, const CompiledP& f, long n, const LinComb& v) {
    LinComb out;
    for (auto& [s, c] : v) apply_into(sys, *f, n, s, c, out);
    return out;
}

LinComb mode_apply(const System& sys, const FieldExpr& f, long n, const FockState& s) {
    return mode_apply(sys, compile(sys, f), n, s);
}

LinComb state_of_field(const System& sys, const FieldExpr& f) { return mode_apply(sys, f, -1, vacuum(sys)); }

OPE ope_singular(const System& sys, const FieldExpr& a, const FieldExpr& b, int max_pole) {
    OPE out;
    LinComb vb = state_of_field(sys, b);
    if (vb.empty()) return out;
    auto ca = compile(sys, a);
    int top = kNone;
    for (auto& [s, c] : vb) top = std::max(top, sys.degree(s) + cbound(sys, *ca, s.mu));
    for (long j = 0; j <= top; ++j) {
        if (max_pole > 0 && j + 1 > max_pole) break;
        LinComb r = mode_apply(sys, ca, j, vb);
        if (!r.empty()) out.emplace(static_cast<int>(j + 1), std::move(r));
    }
    return out;
}

LinComb l0_apply(const System& sys, const FieldExpr& conformal, const FockState& s) {
    return mode_apply(sys, conformal, 1, s);
}

Matrix current_gram(const System& sys, const std::vector<FieldExpr>& currents) {
    size_t n = currents.size();
    Matrix g(n, std::vector<RatFun>(n));
    FockState vac = vacuum(sys);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            OPE o = ope_singular(sys, currents[i], currents[j], 2);
            auto it = o.find(2);
            if (it != o.end()) g[i][j] = it->second.coeff(vac);
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (g[i][j] != g[j][i])
                throw Error(Errc::NonSymmetric, "current gram not symmetric at (" + std::to_string(i) + "," +
                                                    std::to_string(j) + ")");
    return g;
}

}  // namespace wfree

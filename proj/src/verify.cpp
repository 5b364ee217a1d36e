#include "wfree/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace wfree {

namespace {

std::string dims_str(const std::vector<long>& v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
    return os.str();
}

std::string ope_str(const System& sys, const OPE& o) {
    if (o.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = o.rbegin(); it != o.rend(); ++it) {
        if (!first) os << "; ";
        first = false;
        os << it->first << ": " << it->second.str(sys);
    }
    return os.str();
}

std::string matrix_str(const Matrix& m) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.size(); ++i) {
        os << (i ? "; " : "");
        for (size_t j = 0; j < m[i].size(); ++j) os << (j ? ", " : "") << m[i][j].str();
    }
    os << "]";
    return os.str();
}

const FieldExpr* find_field(const std::vector<std::pair<std::string, FieldExpr>>& v, const std::string& name) {
    for (auto& [n, f] : v)
        if (n == name) return &f;
    return nullptr;
}

// truncated power series in q
using Series = std::vector<long>;

Series one_series(int D) {
    Series s(D + 1);
    s[0] = 1;
    return s;
}

void times_fermion(Series& s, int m, int D) {
    for (int i = D; i >= m; --i) s[i] += s[i - m];
}

void times_boson(Series& s, int m, int D) {
    for (int i = m; i <= D; ++i) s[i] += s[i - m];
}

}  // namespace

// ------------------------------------------------------------ report

bool Report::pass() const {
    for (auto& i : items)
        if (!i.equal) return false;
    for (auto& r : per_degree)
        if (!r.equal) return false;
    return true;
}

void Report::add(const std::string& id, const std::string& expected, const std::string& computed, bool equal) {
    items.push_back({id, expected, computed, equal});
}

void Report::check(const std::string& id, bool ok) { add(id, "true", ok ? "true" : "false", ok); }

void Report::absorb(const Report& other, const std::string& prefix) {
    for (auto i : other.items) {
        i.id = prefix + i.id;
        items.push_back(std::move(i));
    }
    per_degree.insert(per_degree.end(), other.per_degree.begin(), other.per_degree.end());
}

// ------------------------------------------------------------ homomorphism

Report check_homomorphism(const Realization& r) {
    Report rep;
    rep.suite = "homomorphism";
    rep.input("realization", r.key);
    const System& sys = *r.sys;
    FockState vac = vacuum(sys);
    for (auto& u : r.structure.gens)
        for (auto& v : r.structure.gens) {
            const FieldExpr* fu = find_field(r.generators, u);
            const FieldExpr* fv = find_field(r.generators, v);
            if (!fu || !fv) {
                rep.add(u + "," + v, "image", "missing", false);
                continue;
            }
            OPE expected;
            auto it = r.structure.table.find({u, v});
            if (it != r.structure.table.end())
                for (auto& [pole, terms] : it->second) {
                    LinComb acc;
                    for (auto& [name, c] : terms) {
                        if (name == "1") {
                            acc.add(vac, c);
                            continue;
                        }
                        const FieldExpr* f = find_field(r.generators, name);
                        if (!f) throw Error(Errc::UnknownSpecies, "structure names unknown generator '" + name + "'");
                        acc.add(state_of_field(sys, *f), c);
                    }
                    if (!acc.empty()) expected[pole] = acc;
                }
            OPE got = ope_singular(sys, *fu, *fv);
            rep.add(u + "," + v, ope_str(sys, expected), ope_str(sys, got), got == expected);
        }
    return rep;
}

Report check_annihilation(const Realization& r) {
    Report rep;
    rep.suite = "annihilation";
    rep.input("realization", r.key);
    const System& sys = *r.sys;
    for (auto& name : r.annihilated) {
        LinComb v = state_of_field(sys, r.field(name));
        for (auto& op : r.screenings) {
            LinComb out = mode_apply(sys, compile(sys, op.field), 0, v);
            rep.add(op.name + "(" + name + ")", "0", out.empty() ? "0" : out.str(sys), out.empty());
        }
    }
    return rep;
}

// ------------------------------------------------------------ covariance

Realization perturb_companion(const Realization& r) {
    Realization p = r;
    if (!r.covariance || r.covariance->roots.size() < 2) throw Error(Errc::InvalidArgument, "no companion field");
    const std::string& name = r.covariance->roots.back().first;
    for (auto& [n, f] : p.distinguished)
        if (n == name) f = -f;
    return p;
}

namespace {

int matrix_parity(const SuperMatrix& m, const std::vector<int>& par) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j)
            if (m[i][j] != 0) return (par[i] + par[j]) & 1;
    return 0;
}

SuperMatrix matmul(const SuperMatrix& a, const SuperMatrix& b) {
    size_t n = a.size();
    SuperMatrix c(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            if (a[i][k] != 0)
                for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

SuperMatrix superbracket(const SuperMatrix& x, const SuperMatrix& y, const std::vector<int>& par) {
    SuperMatrix a = matmul(x, y), b = matmul(y, x);
    bool odd = matrix_parity(x, par) & matrix_parity(y, par);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) a[i][j] = odd ? Rat(a[i][j] + b[i][j]) : Rat(a[i][j] - b[i][j]);
    return a;
}

// coefficient of the elementary root matrix e in m
Rat root_coeff(const SuperMatrix& m, const SuperMatrix& e) {
    for (size_t i = 0; i < e.size(); ++i)
        for (size_t j = 0; j < e.size(); ++j)
            if (e[i][j] != 0) return m[i][j] / e[i][j];
    return 0;
}

}  // namespace

Report check_screening_covariance(const Realization& r) {
    Report rep;
    rep.suite = "screening-covariance";
    rep.input("realization", r.key);
    if (!r.covariance) throw Error(Errc::InvalidArgument, "realization '" + r.key + "' has no covariance data");
    const CovarianceData& cv = *r.covariance;
    const System& sys = *r.sys;
    for (auto& [u, X] : cv.currents)
        for (auto& [beta, Eb] : cv.roots) {
            OPE expected;
            LinComb acc;
            for (auto& [gamma, Eg] : cv.roots) {
                Rat c = root_coeff(superbracket(Eg, X, cv.parity), Eb);
                if (c != 0) acc.add(state_of_field(sys, r.field(gamma)), RatFun(c));
            }
            if (!acc.empty()) expected[1] = acc;
            OPE got = ope_singular(sys, r.field(u), r.field(beta));
            rep.add(u + "," + beta, ope_str(sys, expected), ope_str(sys, got), got == expected);
        }
    return rep;
}

// ------------------------------------------------------------ resolution

std::vector<long> wakimoto_character(int D) {
    Series s = one_series(D);
    for (int m = 1; m <= D; ++m)
        for (int k = 0; k < 2; ++k) {
            times_fermion(s, m, D);
            times_boson(s, m, D);
        }
    return s;
}

std::vector<long> virasoro_character(int D) {
    Series s = one_series(D);
    for (int m = 2; m <= D; ++m) times_boson(s, m, D);
    return s;
}

Report check_resolution(const Rat& k1, const Rat& k2, int max_degree, int terms, int compose_degree) {
    if (k1 == 0) throw Error(Errc::ZeroK1, "resolution needs k1 != 0");
    if (compose_degree < 0) compose_degree = max_degree;
    Report rep;
    rep.suite = "resolution";
    rep.input("k1", to_string(k1));
    rep.input("k2", to_string(k2));
    rep.input("max_degree", std::to_string(max_degree));
    rep.input("terms", std::to_string(terms));
    Realization w = gl11_wakimoto(RatFun(k1), RatFun(k2));
    const System& sys = *w.sys;
    ScreeningOp S = w.screenings.at(0);

    rep.absorb(check_annihilation(w), "annihilate:");

    std::vector<ScreeningOp> chain;
    ScreeningOp cur = S;
    for (int i = 0; i <= terms; ++i) {
        chain.push_back(cur);
        cur.source = target_of(sys, cur);
    }
    for (int i = 0; i < terms; ++i) {
        auto ok = compose_check(sys, chain[i + 1], chain[i], 0, compose_degree);
        for (int d = 0; d <= compose_degree; ++d)
            rep.check("SS=0:term" + std::to_string(i) + ":deg" + std::to_string(d), ok[d]);
    }

    GradedMap g = residue_map(sys, S, 0, max_degree);
    KernelReport k = joint_kernel(sys, S.source, {g}, 0, max_degree);
    std::vector<long> oracle = wakimoto_character(max_degree);
    for (int d = 0; d <= max_degree; ++d)
        rep.per_degree.push_back({d, k.dims[d], oracle[d], k.dims[d] == oracle[d]});
    rep.add("kernel-dims", dims_str(oracle), dims_str(k.dims), k.dims == oracle);
    return rep;
}

// ------------------------------------------------------------ rank-1 duality

Report check_rank1_ff_duality(const Rat& K, int max_degree) {
    if (K == 0) throw Error(Errc::ExcludedLevel, "K = 0");
    Report rep;
    rep.suite = "rank1-duality";
    rep.input("K", to_string(K));
    rep.input("max_degree", std::to_string(max_degree));
    auto sys = register_system({Species::heisenberg("a")}, PairingTable{{"a"}, {{RatFun(2 * K)}}});
    Momentum zero = sys->zero_momentum();
    ScreeningOp left{"S-", FieldExpr::expo(RatFun(-1 / K), {{"a", RatFun(1)}}), zero};
    ScreeningOp right{"S+", FieldExpr::expo(RatFun(1), {{"a", RatFun(1)}}), zero};
    auto kl = joint_kernel(*sys, zero, {residue_map(*sys, left, 0, max_degree)}, 0, max_degree);
    auto kr = joint_kernel(*sys, zero, {residue_map(*sys, right, 0, max_degree)}, 0, max_degree);
    std::vector<long> oracle = virasoro_character(max_degree);
    for (int d = 0; d <= max_degree; ++d) {
        rep.per_degree.push_back({d, kl.dims[d], kr.dims[d], kl.dims[d] == kr.dims[d]});
        if (kl.dims[d] != oracle[d])
            rep.add("jump:left:deg" + std::to_string(d), std::to_string(oracle[d]), std::to_string(kl.dims[d]),
                    false);
        if (kr.dims[d] != oracle[d])
            rep.add("jump:right:deg" + std::to_string(d), std::to_string(oracle[d]), std::to_string(kr.dims[d]),
                    false);
    }
    rep.add("left", dims_str(oracle), dims_str(kl.dims), kl.dims == oracle);
    rep.add("right", dims_str(oracle), dims_str(kr.dims), kr.dims == oracle);
    return rep;
}

// ------------------------------------------------------------ coset duality

Report check_gram_duality(const PairTag& p) {
    Report rep;
    rep.suite = "gram-duality";
    rep.input("pair", pair_name(p.kind));
    rep.input("n", std::to_string(p.n));
    RatFun k1 = RatFun::t();
    RatFun k2 = dual_level(p, k1);
    auto a = alpha_tilde_ambient(p, k1);
    auto b = beta_tilde_ambient(p, k2);
    Matrix ga = current_gram(*a.sys, a.fields);
    Matrix gb = current_gram(*b.sys, b.fields);
    Matrix border = bordermatrix(p, k1 + RatFun(dual_coxeter1(p)));
    rep.add("alpha-tilde=beta-tilde", matrix_str(ga), matrix_str(gb), ga == gb);
    rep.add("alpha-tilde=bordermatrix", matrix_str(border), matrix_str(ga), ga == border);
    return rep;
}

Report check_coset_duality(const PairTag& p, const Rat& k1, int max_degree) {
    std::string s1 = excluded_set(p, 1, k1);
    if (!s1.empty()) throw Error(Errc::ExcludedLevel, "k1 = " + to_string(k1) + " lies in " + s1);
    Rat k2 = dual_level(p, k1);
    std::string s2 = excluded_set(p, 2, k2);
    if (!s2.empty())
        throw Error(Errc::ExcludedLevel, "dual level k2 = " + to_string(k2) + " lies in " + s2);
    Report rep;
    rep.suite = "coset-duality";
    rep.input("pair", pair_name(p.kind));
    rep.input("n", std::to_string(p.n));
    rep.input("k1", to_string(k1));
    rep.input("k2", to_string(k2));
    rep.input("max_degree", std::to_string(max_degree));
    rep.absorb(check_gram_duality(p), "gram:");

    auto kernel = [&](const Realization& r) {
        const System& sys = *r.sys;
        std::vector<GradedMap> maps;
        for (auto& op : r.screenings) maps.push_back(residue_map(sys, op, 0, max_degree));
        return joint_kernel(sys, sys.zero_momentum(), maps, 0, max_degree).dims;
    };
    auto left = kernel(subregular_realization(p, RatFun(k1), Form::Coset));
    auto right = kernel(principal_super_realization(p, RatFun(k2), Form::Coset));
    for (int d = 0; d <= max_degree; ++d) rep.per_degree.push_back({d, left[d], right[d], left[d] == right[d]});
    rep.add("kernel-dims", dims_str(left), dims_str(right), left == right);
    return rep;
}

// ------------------------------------------------------------ Kazama-Suzuki

Report check_ks(const PairTag& p, const RatFun& k2, bool drop_psi) {
    Report rep;
    rep.suite = "kazama-suzuki";
    rep.input("pair", pair_name(p.kind));
    rep.input("n", std::to_string(p.n));
    rep.input("k2", k2.str());
    KSFields ks = ks_fields(p, k2);
    int n = p.n;
    RatFun r(lacity(p.kind));
    if (drop_psi)
        for (auto& [name, f] : ks.a_side)
            if (name == "A1") f = r * FieldExpr::gen("b1") - FieldExpr::gen("phi");

    auto get = [](const std::vector<std::pair<std::string, FieldExpr>>& v, const std::string& name) {
        const FieldExpr* f = find_field(v, name);
        if (!f) throw Error(Errc::UnknownSpecies, name);
        return *f;
    };
    const System& as = *ks.a_sys;
    std::vector<FieldExpr> A;
    for (int i = 1; i <= n; ++i) A.push_back(get(ks.a_side, "A" + std::to_string(i)));
    for (const char* w : {"X", "Y"}) {
        FieldExpr W = get(ks.a_side, w);
        for (int i = 1; i <= n; ++i) {
            OPE o = ope_singular(as, W, A[i - 1]);
            rep.add(std::string(w) + ",A" + std::to_string(i), "0", ope_str(as, o), o.empty());
        }
    }
    auto scaled_form = [](const std::vector<std::vector<Rat>>& f, const RatFun& s) {
        Matrix m(f.size(), std::vector<RatFun>(f.size()));
        for (size_t i = 0; i < f.size(); ++i)
            for (size_t j = 0; j < f.size(); ++j) m[i][j] = s * RatFun(f[i][j]);
        return m;
    };
    Matrix ga = current_gram(as, A);
    Matrix ea = scaled_form(cartan_form(p), r * ks.K2);
    rep.add("gram:A", matrix_str(ea), matrix_str(ga), ga == ea);
    FieldExpr ht2 = get(ks.a_side, "Ht2");
    for (int i = 1; i <= n; ++i) {
        RatFun v = current_gram(as, {ht2, A[i - 1]})[0][1];
        rep.add("Ht2,A" + std::to_string(i), "0", v.str(), v.is_zero());
    }

    const System& bs = *ks.b_sys;
    std::vector<FieldExpr> B;
    for (int i = 0; i <= n; ++i) B.push_back(get(ks.b_side, "B" + std::to_string(i)));
    Matrix gbm = current_gram(bs, B);
    Matrix eb = scaled_form(super_form(p), r * ks.K1);
    rep.add("gram:B", matrix_str(eb), matrix_str(gbm), gbm == eb);
    FieldExpr ht1 = get(ks.b_side, "Ht1");
    for (int i = 0; i <= n; ++i) {
        RatFun v = current_gram(bs, {ht1, B[i]})[0][1];
        rep.add("Ht1,B" + std::to_string(i), "0", v.str(), v.is_zero());
    }
    return rep;
}

// ------------------------------------------------------------ norms

Report norm_degeneracy(const PairTag& p) {
    Report rep;
    rep.suite = "norm-degeneracy";
    rep.input("pair", pair_name(p.kind));
    rep.input("n", std::to_string(p.n));
    RatFun t = RatFun::t();
    auto [x1, x2] = degeneracy_constants(p);
    auto cur = distinguished_currents(p, t, t);
    for (auto& c : cur) {
        RatFun norm = current_gram(*c.sys, {c.field})[0][0];
        Rat x = c.name == "H1" ? x1 : x2;
        auto zeros = linear_zeros(norm);
        bool ok = zeros.size() == 1 && zeros[0] == x;
        std::string got = "[";
        for (size_t i = 0; i < zeros.size(); ++i) got += (i ? "," : "") + to_string(zeros[i]);
        got += "]";
        rep.add("norm:" + c.name, "", norm.str(), true);
        rep.add("zero:" + c.name, "[" + to_string(x) + "]", got, ok);
        if (c.name == "H1" && p.kind == PairKind::SL && p.n == 2) {
            RatFun expect = RatFun(Rat(2, 3)) * (t + RatFun(3)) - RatFun(1);
            rep.add("formula:H1", expect.str(), norm.str(), norm == expect);
        }
    }
    return rep;
}

// ------------------------------------------------------------ counting

std::vector<long> character_oracle(const System& sys, int D, int charge) {
    if (D < 0) return {};
    bool pairs = sys.has_boson_pairs();
    if (!pairs && charge != 0) return std::vector<long>(D + 1, 0);
    Series plain = one_series(D);
    int L = 2 * D + std::abs(charge) + 1;
    int W = 2 * L + 1;
    // graded by charge: g[d][j + L]
    std::vector<std::vector<long>> g(D + 1, std::vector<long>(W));
    g[0][L] = 1;
    for (int s = 0; s < sys.size(); ++s) {
        const Species& sp = sys.sp(s);
        int w = sp.engine_weight;
        if (sp.kind == Kind::Heisenberg) {
            for (int m = 1; m <= D; ++m) times_boson(plain, m, D);
        } else if (sp.kind == Kind::FermionHalf) {
            for (int m = w; m <= D; ++m) {
                if (m == 0)
                    for (auto& x : plain) x *= 2;
                else
                    times_fermion(plain, m, D);
            }
        } else {
            int q = sys.charge(FockState{sys.zero_momentum(), {Mode{s, 1}}});
            for (int m = std::max(w, 1); m <= D; ++m)
                for (int d = m; d <= D; ++d)
                    for (int j = 0; j < W; ++j) {
                        int src = j - q;
                        if (src >= 0 && src < W) g[d][j] += g[d - m][src];
                    }
            // weight-0 modes: geometric series in the charge variable only
            if (w == 0)
                for (int d = 0; d <= D; ++d) {
                    if (q > 0)
                        for (int j = q; j < W; ++j) g[d][j] += g[d][j - q];
                    else
                        for (int j = W - 1 + q; j >= 0; --j) g[d][j] += g[d][j - q];
                }
        }
    }
    std::vector<long> out(D + 1);
    for (int d = 0; d <= D; ++d) {
        long acc = 0;
        for (int e = 0; e <= d; ++e) acc += plain[e] * g[d - e][charge + L];
        out[d] = acc;
    }
    return out;
}

Report check_counting(const System& sys, const Momentum& mu, int max_degree, const std::string& label) {
    Report rep;
    rep.suite = "counting";
    rep.input("system", label);
    rep.input("max_degree", std::to_string(max_degree));
    auto oracle = character_oracle(sys, max_degree, 0);
    auto dims = graded_dimension(sys, mu, 0, max_degree, 0);
    for (int d = 0; d <= max_degree; ++d) rep.per_degree.push_back({d, dims[d], oracle[d], dims[d] == oracle[d]});
    rep.add(label, dims_str(oracle), dims_str(dims), dims == oracle);
    return rep;
}

// ------------------------------------------------------------ conformal dimensions

Report check_delta(const std::vector<DeltaSample>& samples) {
    Report rep;
    rep.suite = "delta";
    rep.input("samples", std::to_string(samples.size()));
    for (size_t i = 0; i < samples.size(); ++i) {
        const DeltaSample& s = samples[i];
        if (s.k1 == 0) throw Error(Errc::ZeroK1, "sample " + std::to_string(i) + " has k1 = 0");
        Realization w = gl11_wakimoto(RatFun(s.k1), RatFun(s.k2));
        const System& sys = *w.sys;
        Momentum mu = sys.zero_momentum();
        mu.eig[sys.heis_pos(sys.index("chi1"))] = RatFun(s.mu1);
        mu.eig[sys.heis_pos(sys.index("chi2"))] = RatFun(-s.mu2);
        Rat nl = (s.mu1 + s.mu2) / 2 - 1, el = s.mu1 - s.mu2;
        Rat delta = delta_conformal(nl, el, s.k1, s.k2, DeltaSign::Minus);
        std::string tag = "(" + to_string(s.k1) + "," + to_string(s.k2) + ";" + to_string(s.mu1) + "," +
                          to_string(s.mu2) + ")";
        FockState top{mu, {}};
        FockState ctop = normal_form(sys, mu, {Mode{sys.index("c"), 1}}).state;
        for (auto& [name, st] : {std::pair<std::string, FockState>{"|mu>", top}, {"c|mu>", ctop}}) {
            LinComb got = l0_apply(sys, w.conformal, st);
            LinComb want = single(st, RatFun(delta));
            rep.add("L0" + name + tag, want.str(sys), got.str(sys), got == want);
        }
    }
    return rep;
}

std::vector<Rat> sample_levels(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    static const long dens[] = {7, 11, 13, 17, 19, 23, 29, 31};
    std::uniform_int_distribution<int> di(0, 7);
    std::uniform_int_distribution<long> ni(-90, 90);
    std::vector<Rat> out;
    while (static_cast<int>(out.size()) < count) {
        long q = dens[di(rng)], p = ni(rng);
        if (p % q == 0) continue;
        Rat v(p, q);
        v.canonicalize();
        out.push_back(v);
    }
    return out;
}

}  // namespace wfree

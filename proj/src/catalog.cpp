#include "wfree/catalog.hpp"

#include <numeric>
#include <sstream>

namespace wfree {

namespace {

RatFun R(const Rat& q) { return RatFun(q); }
FieldExpr G(const std::string& n) { return FieldExpr::gen(n); }
std::string idx(const std::string& base, int i) { return base + std::to_string(i); }

FieldExpr heis(const std::vector<std::string>& names, const std::vector<RatFun>& coef) {
    DirTerms t;
    for (size_t i = 0; i < names.size(); ++i) t.emplace_back(names[i], coef[i]);
    return FieldExpr::lin(t);
}

PairingTable table(const std::vector<std::string>& names, const Matrix& g) { return PairingTable{names, g}; }

Matrix scaled(const std::vector<std::vector<Rat>>& m, const RatFun& s) {
    Matrix out(m.size(), std::vector<RatFun>(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) out[i][j] = s * R(m[i][j]);
    return out;
}

RatFun bilinear(const Matrix& g, const std::vector<RatFun>& a, const std::vector<RatFun>& b) {
    RatFun s;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) s += a[i] * g[i][j] * b[j];
    }
    return s;
}

SuperMatrix elem(int m, int i, int j, const Rat& v = 1) {
    SuperMatrix e(m, std::vector<Rat>(m));
    e[i][j] = v;
    return e;
}

SuperMatrix diag(const std::vector<Rat>& d) {
    SuperMatrix e(d.size(), std::vector<Rat>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) e[i][i] = d[i];
    return e;
}

// gl(1|1) table with index 1 even and index 2 odd
void gl11_structure(Structure& s, const RatFun& k1, const RatFun& k2) {
    auto par = [](int i) { return i == 2 ? 1 : 0; };
    auto name = [](int i, int j) { return "E" + std::to_string(i) + std::to_string(j); };
    std::map<std::pair<std::string, std::string>, RatFun> form{
        {{"E11", "E11"}, k1 + k2}, {{"E22", "E22"}, k2 - k1}, {{"E11", "E22"}, -k2},
        {{"E22", "E11"}, -k2},     {{"E12", "E21"}, k1},      {{"E21", "E12"}, -k1}};
    int order[4][2] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    for (auto& u : order) s.gens.push_back(name(u[0], u[1]));
    for (auto& u : order)
        for (auto& v : order) {
            int i = u[0], j = u[1], k = v[0], l = v[1];
            int pu = (par(i) + par(j)) & 1, pv = (par(k) + par(l)) & 1;
            std::map<std::string, RatFun> br;
            if (j == k) br[name(i, l)] += RatFun(1);
            if (l == i) br[name(k, j)] += RatFun((pu & pv) ? 1 : -1);
            PoleTerms pt;
            DirTerms b1;
            for (auto& [nm, c] : br)
                if (!c.is_zero()) b1.emplace_back(nm, c);
            if (!b1.empty()) pt[1] = b1;
            auto f = form.find({name(i, j), name(k, l)});
            if (f != form.end() && !f->second.is_zero()) pt[2] = {{"1", f->second}};
            if (!pt.empty()) s.table[{name(i, j), name(k, l)}] = pt;
        }
}

void require_nonzero(const RatFun& K, const std::string& what) {
    if (K.is_zero()) throw Error(Errc::ExcludedLevel, what);
}

struct Heis {
    std::vector<std::string> names;
    Matrix gram;
};

}  // namespace

// ------------------------------------------------------------ constants

PairKind parse_pair(const std::string& s) {
    if (s == "sl" || s == "SL") return PairKind::SL;
    if (s == "so" || s == "SO" || s == "osp") return PairKind::SO;
    throw Error(Errc::ParseError, "unknown pair '" + s + "' (expected sl or so)");
}

std::string pair_name(PairKind k) { return k == PairKind::SL ? "sl" : "so"; }

int lacity(PairKind k) { return k == PairKind::SL ? 1 : 2; }

Rat dual_coxeter1(const PairTag& p) { return p.kind == PairKind::SL ? Rat(p.n + 1) : Rat(2 * p.n - 1); }
Rat dual_coxeter2(const PairTag& p) { return Rat(p.n); }

std::vector<std::vector<Rat>> cartan_form(const PairTag& p) {
    int n = p.n;
    std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i) {
        g[i][i] = 2;
        if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = -1;
    }
    if (p.kind == PairKind::SO) g[n - 1][n - 1] = 1;
    return g;
}

std::vector<std::vector<Rat>> super_form(const PairTag& p) {
    int n = p.n;
    std::vector<std::vector<Rat>> g(n + 1, std::vector<Rat>(n + 1));
    if (p.kind == PairKind::SL) {
        for (int i = 1; i <= n; ++i) g[i][i] = 2;
        for (int i = 0; i < n; ++i) g[i][i + 1] = g[i + 1][i] = -1;
        return g;
    }
    if (n == 1) {
        g[0][1] = g[1][0] = -1;
        g[1][1] = 2;
        return g;
    }
    for (int i = 1; i < n; ++i) g[i][i] = 1;
    for (int i = 0; i < n - 1; ++i) g[i][i + 1] = g[i + 1][i] = Rat(-1, 2);
    g[n - 1][n] = g[n][n - 1] = -1;
    g[n][n] = 2;
    return g;
}

std::vector<Rat> omega1(const PairTag& p) {
    std::vector<Rat> w(p.n);
    for (int i = 1; i <= p.n; ++i) w[i - 1] = p.kind == PairKind::SL ? Rat(p.n - i + 1, p.n + 1) : Rat(1);
    return w;
}

std::vector<Rat> omega0(const PairTag& p) {
    std::vector<Rat> w(p.n + 1);
    for (int i = 0; i <= p.n; ++i) {
        if (p.kind == PairKind::SL)
            w[i] = Rat(-(p.n - i + 1), p.n);
        else
            w[i] = i < p.n ? Rat(-2) : Rat(-1);
    }
    return w;
}

Rat dual_level(const PairTag& p, const Rat& k1) {
    Rat K = k1 + dual_coxeter1(p);
    if (K == 0) throw Error(Errc::ExcludedLevel, "k1 = " + to_string(k1) + " lies in K1 = {-h1}");
    return Rat(1) / (lacity(p.kind) * K) - dual_coxeter2(p);
}

RatFun dual_level(const PairTag& p, const RatFun& k1) {
    RatFun K = k1 + R(dual_coxeter1(p));
    if (K.is_zero()) throw Error(Errc::ExcludedLevel, "k1 lies in K1 = {-h1}");
    return RatFun(1) / (RatFun(lacity(p.kind)) * K) - R(dual_coxeter2(p));
}

Rat dual_level_inverse(const PairTag& p, const Rat& k2) {
    Rat K = k2 + dual_coxeter2(p);
    if (K == 0) throw Error(Errc::ExcludedLevel, "k2 = " + to_string(k2) + " lies in K2 = {-h2}");
    return Rat(1) / (lacity(p.kind) * K) - dual_coxeter1(p);
}

LevelData level_data(const PairTag& p, const Rat& k1) { return LevelData{p, R(k1), R(dual_level(p, k1))}; }

std::pair<Rat, Rat> degeneracy_constants(const PairTag& p) {
    Rat n = p.n;
    if (p.kind == PairKind::SL) return {Rat(1) / n - n, -n * n / (n + 1)};
    return {2 - 2 * n, Rat(1, 2) - n};
}

Admissible admissible_levels(PairKind kind, int n, long u, long v) {
    Admissible a;
    if (kind == PairKind::SL) {
        a.k = Rat(-(n + 1)) + Rat(u, n);
        a.partner = Rat(-n) + Rat(n, u == 0 ? 1 : u);
        if (u <= n)
            a.reason = "u must exceed n";
        else if (std::gcd(u, static_cast<long>(n)) != 1)
            a.reason = "gcd(u,n) != 1";
        else
            a.valid = true;
        return a;
    }
    if (v == 0) {
        a.reason = "v required";
        return a;
    }
    a.k = Rat(-(2 * n - 1)) + Rat(u, v);
    a.partner = Rat(-n) + Rat(v, 2 * (u == 0 ? 1 : u));
    if (v != 2 * n - 1 && v != 2 * n)
        a.reason = "v must be 2n-1 or 2n";
    else if (u <= v)
        a.reason = "u must exceed v";
    else if (std::gcd(u, v) != 1)
        a.reason = "gcd(u,v) != 1";
    else
        a.valid = true;
    return a;
}

bool is_admissible(const PairTag& p, const Rat& k) {
    Rat shifted = k + dual_coxeter1(p);
    std::vector<long> dens;
    if (p.kind == PairKind::SL)
        dens = {p.n};
    else
        dens = {2L * p.n - 1, 2L * p.n};
    for (long v : dens) {
        Rat u = shifted * v;
        if (u.get_den() != 1 || !u.get_num().fits_slong_p()) continue;
        if (admissible_levels(p.kind, p.n, u.get_num().get_si(), v).valid) return true;
    }
    return false;
}

std::string excluded_set(const PairTag& p, int side, const Rat& k) {
    auto [x1, x2] = degeneracy_constants(p);
    if (side == 1) {
        if (k == -dual_coxeter1(p)) return "K1";
        if (k == x1) return "S1";
    } else {
        if (k == -dual_coxeter2(p)) return "K2";
        if (k == x2) return "S2";
    }
    return "";
}

Rat delta_conformal(const Rat& n, const Rat& e, const Rat& k1, const Rat& k2, DeltaSign which) {
    if (k1 == 0) throw Error(Errc::ZeroK1, "k1 = 0");
    Rat lin = which == DeltaSign::Plus ? -e : e;
    return ((1 - k2) / k1 * e * e + 2 * e * n + lin) / (2 * k1);
}

// ------------------------------------------------------------ realizations

const FieldExpr& Realization::field(const std::string& name) const {
    for (auto& [n, f] : generators)
        if (n == name) return f;
    for (auto& [n, f] : distinguished)
        if (n == name) return f;
    throw Error(Errc::UnknownSpecies, "realization '" + key + "' has no field '" + name + "'");
}

Realization gl11_wakimoto(const RatFun& k1, const RatFun& k2) {
    if (k1.is_zero()) throw Error(Errc::ZeroK1, "gl(1|1) screening needs k1 != 0");
    Realization r;
    r.key = "gl11-wakimoto";
    std::vector<Species> sp{Species::fermion("b", 1, "c"), Species::fermion("c", 0, "b"), Species::heisenberg("chi1"),
                            Species::heisenberg("chi2")};
    RatFun one(1);
    r.sys = register_system(sp, table({"chi1", "chi2"}, {{k1 + k2 - one, one - k2}, {one - k2, k2 - k1 - one}}));
    FieldExpr chi = G("chi1") + G("chi2");
    FieldExpr cb = FieldExpr::nord(G("c"), G("b"));
    r.generators = {{"E11", -cb + G("chi1")},
                    {"E12", G("b")},
                    {"E21", FieldExpr::nord(G("c"), chi) + k1 * FieldExpr::deriv(G("c"))},
                    {"E22", cb + G("chi2")}};
    gl11_structure(r.structure, k1, k2);
    r.conformal = FieldExpr::nord(FieldExpr::deriv(G("c")), G("b")) +
                  (one - k2) / (RatFun(2) * k1 * k1) * FieldExpr::nord(chi, chi) +
                  one / (RatFun(2) * k1) *
                      (FieldExpr::nord(G("chi1"), G("chi1")) - FieldExpr::nord(G("chi2"), G("chi2")) +
                       FieldExpr::deriv(chi));
    FieldExpr S = FieldExpr::nord(G("b"), FieldExpr::expo(-one / k1, {{"chi1", one}, {"chi2", one}}));
    r.screenings = {{"S", S, r.sys->zero_momentum()}};
    r.annihilated = {"E11", "E12", "E21", "E22"};
    return r;
}

Realization fms_realization() {
    Realization r;
    r.key = "fms";
    std::vector<Species> sp{Species::heisenberg("x"), Species::heisenberg("y")};
    r.sys = register_system(sp, table({"x", "y"}, {{RatFun(1), RatFun(0)}, {RatFun(0), RatFun(-1)}}), {"x", "y"});
    r.generators = {{"beta", FieldExpr::expo(RatFun(1), {{"x", RatFun(1)}, {"y", RatFun(1)}})},
                    {"gamma", -FieldExpr::nord(G("x"), FieldExpr::expo(RatFun(-1), {{"x", RatFun(1)}, {"y", RatFun(1)}}))}};
    r.structure.gens = {"beta", "gamma"};
    r.structure.table[{"beta", "gamma"}] = {{1, {{"1", RatFun(1)}}}};
    r.structure.table[{"gamma", "beta"}] = {{1, {{"1", RatFun(-1)}}}};
    r.screenings = {{"Sx", FieldExpr::expo(RatFun(1), {{"x", RatFun(1)}}), r.sys->zero_momentum()}};
    r.annihilated = {"beta", "gamma"};
    return r;
}

Realization boson_fermion_realization() {
    Realization r;
    r.key = "boson-fermion";
    std::vector<Species> sp{Species::heisenberg("phi")};
    r.sys = register_system(sp, table({"phi"}, {{RatFun(1)}}), {"phi"});
    r.generators = {{"b", FieldExpr::expo(RatFun(1), {{"phi", RatFun(1)}})},
                    {"c", FieldExpr::expo(RatFun(-1), {{"phi", RatFun(1)}})}};
    r.structure.gens = {"b", "c"};
    r.structure.table[{"b", "c"}] = {{1, {{"1", RatFun(1)}}}};
    r.structure.table[{"c", "b"}] = {{1, {{"1", RatFun(1)}}}};
    return r;
}

Form parse_form(const std::string& s) {
    if (s == "miura") return Form::Miura;
    if (s == "bosonized") return Form::Bosonized;
    if (s == "coset") return Form::Coset;
    throw Error(Errc::ParseError, "unknown form '" + s + "'");
}

std::string form_name(Form f) {
    switch (f) {
        case Form::Miura: return "miura";
        case Form::Bosonized: return "bosonized";
        case Form::Coset: return "coset";
    }
    return "";
}

Matrix bordermatrix(const PairTag& p, const RatFun& K) {
    int n = p.n, r = lacity(p.kind);
    Matrix g(n + 1, std::vector<RatFun>(n + 1));
    g[0][0] = RatFun(1);
    for (int i = 1; i <= n; ++i) g[i][i] = RatFun(2) * K;
    for (int i = 0; i < n; ++i) g[i][i + 1] = g[i + 1][i] = -K;
    g[n][n] = RatFun(2 * r) * K;
    if (n >= 2) g[n - 1][n] = g[n][n - 1] = RatFun(-r) * K;
    return g;
}

namespace {

std::vector<std::string> names(const std::string& base, int from, int to) {
    std::vector<std::string> v;
    for (int i = from; i <= to; ++i) v.push_back(idx(base, i));
    return v;
}

std::vector<RatFun> unit(int size, int pos, const RatFun& v = RatFun(1)) {
    std::vector<RatFun> u(size);
    u[pos] = v;
    return u;
}

// center currents paired through the heisenberg gram
void add_center(Realization& r, const std::vector<std::pair<std::string, std::vector<RatFun>>>& center,
                const std::vector<std::string>& hnames, const Matrix& gram) {
    for (auto& [nm, v] : center) {
        r.generators.emplace_back(nm, heis(hnames, v));
        r.structure.gens.push_back(nm);
    }
    for (auto& [a, va] : center)
        for (auto& [b, vb] : center) {
            RatFun f = bilinear(gram, va, vb);
            if (!f.is_zero()) r.structure.table[{a, b}] = {{2, {{"1", f}}}};
        }
}

SystemHandle bosonized_subregular_system(const PairTag& p, const RatFun& K) {
    int n = p.n;
    std::vector<Species> sp{Species::heisenberg("x"), Species::heisenberg("y")};
    auto an = names("a", 1, n);
    for (auto& a : an) sp.push_back(Species::heisenberg(a));
    std::vector<std::string> all{"x", "y"};
    all.insert(all.end(), an.begin(), an.end());
    Matrix g(n + 2, std::vector<RatFun>(n + 2));
    g[0][0] = RatFun(1);
    g[1][1] = RatFun(-1);
    Matrix c = scaled(cartan_form(p), K);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i + 2][j + 2] = c[i][j];
    return register_system(sp, table(all, g), {"x", "y"});
}

SystemHandle bosonized_super_system(const PairTag& p, const RatFun& K) {
    int n = p.n;
    std::vector<Species> sp{Species::heisenberg("phi")};
    auto an = names("a", 0, n);
    for (auto& a : an) sp.push_back(Species::heisenberg(a));
    std::vector<std::string> all{"phi"};
    all.insert(all.end(), an.begin(), an.end());
    Matrix g(n + 2, std::vector<RatFun>(n + 2));
    g[0][0] = RatFun(1);
    Matrix c = scaled(super_form(p), K);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) g[i + 1][j + 1] = c[i][j];
    return register_system(sp, table(all, g), {"phi"});
}

SystemHandle plain_system(const std::vector<std::string>& nm, const Matrix& g) {
    std::vector<Species> sp;
    for (auto& a : nm) sp.push_back(Species::heisenberg(a));
    return register_system(sp, table(nm, g));
}

}  // namespace

CosetAmbient alpha_tilde_ambient(const PairTag& p, const RatFun& k1) {
    if (p.n < 2) throw Error(Errc::InvalidArgument, "coset systems need n >= 2");
    RatFun K = k1 + R(dual_coxeter1(p));
    require_nonzero(K, "k1 lies in K1 = {-h1}");
    CosetAmbient a;
    a.sys = bosonized_subregular_system(p, K);
    int n = p.n;
    a.fields.push_back(G("x"));
    a.fields.push_back(G("a1") - K * (G("x") + G("y")));
    for (int i = 2; i < n; ++i) a.fields.push_back(G(idx("a", i)));
    a.fields.push_back(RatFun(lacity(p.kind)) * G(idx("a", n)));
    return a;
}

CosetAmbient beta_tilde_ambient(const PairTag& p, const RatFun& k2) {
    if (p.n < 2) throw Error(Errc::InvalidArgument, "coset systems need n >= 2");
    RatFun K = k2 + R(dual_coxeter2(p));
    require_nonzero(K, "k2 lies in K2 = {-h2}");
    CosetAmbient a;
    a.sys = bosonized_super_system(p, K);
    RatFun m = RatFun(-1) / K;
    a.fields.push_back(m * G("a0") + G("phi"));
    for (int i = 1; i <= p.n; ++i) a.fields.push_back(m * G(idx("a", i)));
    return a;
}

Realization subregular_realization(const PairTag& p, const RatFun& k, Form form) {
    int n = p.n, r = lacity(p.kind);
    if (n < 1) throw Error(Errc::InvalidArgument, "rank must be >= 1");
    RatFun K = k + R(dual_coxeter1(p));
    require_nonzero(K, "k lies in K1 = {-h1}");
    Realization out;
    out.key = "subregular-" + pair_name(p.kind) + ":" + std::to_string(n) + ":" + form_name(form);
    auto an = names("a", 1, n);
    RatFun mK = RatFun(-1) / K;
    std::vector<RatFun> w1;
    for (auto& q : omega1(p)) w1.push_back(R(q));
    Matrix cart = scaled(cartan_form(p), K);

    if (form == Form::Miura) {
        std::vector<Species> sp{Species::boson("beta", 1, "gamma"), Species::boson("gamma", 0, "beta")};
        for (auto& a : an) sp.push_back(Species::heisenberg(a));
        out.sys = register_system(sp, table(an, cart));
        out.screenings.push_back(
            {"Q1", FieldExpr::nord(G("beta"), FieldExpr::expo(mK, {{"a1", RatFun(1)}})), out.sys->zero_momentum()});
        for (int i = 2; i <= n; ++i)
            out.screenings.push_back(
                {idx("Q", i), FieldExpr::expo(mK, {{idx("a", i), RatFun(1)}}), out.sys->zero_momentum()});
        FieldExpr gb = FieldExpr::nord(G("gamma"), G("beta"));
        RatFun lev = K - RatFun(2);
        out.generators = {
            {"e", G("beta")},
            {"h", RatFun(-2) * gb + G("a1")},
            {"f", -FieldExpr::nord(G("gamma"), gb) + lev * FieldExpr::deriv(G("gamma")) +
                      FieldExpr::nord(G("gamma"), G("a1"))}};
        auto& s = out.structure;
        s.gens = {"e", "h", "f"};
        s.table[{"h", "e"}] = {{1, {{"e", RatFun(2)}}}};
        s.table[{"e", "h"}] = {{1, {{"e", RatFun(-2)}}}};
        s.table[{"h", "f"}] = {{1, {{"f", RatFun(-2)}}}};
        s.table[{"f", "h"}] = {{1, {{"f", RatFun(2)}}}};
        s.table[{"e", "f"}] = {{1, {{"h", RatFun(1)}}}, {2, {{"1", lev}}}};
        s.table[{"f", "e"}] = {{1, {{"h", RatFun(-1)}}}, {2, {{"1", lev}}}};
        s.table[{"h", "h"}] = {{2, {{"1", RatFun(2) * lev}}}};
        std::vector<std::pair<std::string, std::vector<RatFun>>> center;
        if (n >= 2) {
            auto v = unit(n, 1);
            v[0] = RatFun(Rat(1, 2));
            center.emplace_back("J2", v);
        }
        for (int i = 3; i <= n; ++i) center.emplace_back(idx("J", i), unit(n, i - 1));
        add_center(out, center, an, cart);
        out.distinguished.emplace_back("H1", heis(an, w1) - FieldExpr::nord(G("beta"), G("gamma")));
        out.annihilated = {"H1"};
        if (n >= 2) {
            FieldExpr e2 = FieldExpr::expo(mK, {{"a2", RatFun(1)}});
            out.distinguished.emplace_back("S_a2", e2);
            out.distinguished.emplace_back("S_a1a2", -FieldExpr::nord(G("gamma"), e2));
        }
        if (p.kind == PairKind::SL && n >= 2) {
            int m = n + 1;
            CovarianceData c;
            c.parity.assign(m, 0);
            c.currents.emplace_back("e", elem(m, 0, 1));
            c.currents.emplace_back("h", diag([&] {
                                        std::vector<Rat> d(m);
                                        d[0] = 1;
                                        d[1] = -1;
                                        return d;
                                    }()));
            c.currents.emplace_back("f", elem(m, 1, 0));
            std::vector<Rat> d2(m);
            d2[0] = Rat(1, 2);
            d2[1] = Rat(1, 2);
            d2[2] = -1;
            c.currents.emplace_back("J2", diag(d2));
            for (int i = 3; i <= n; ++i) {
                std::vector<Rat> d(m);
                d[i - 1] = 1;
                d[i] = -1;
                c.currents.emplace_back(idx("J", i), diag(d));
            }
            c.roots.emplace_back("S_a2", elem(m, 1, 2));
            c.roots.emplace_back("S_a1a2", elem(m, 0, 2));
            out.covariance = c;
        }
        return out;
    }

    if (form == Form::Bosonized) {
        out.sys = bosonized_subregular_system(p, K);
        out.screenings.push_back({"Sx", FieldExpr::expo(RatFun(1), {{"x", RatFun(1)}}), out.sys->zero_momentum()});
        out.screenings.push_back(
            {"Q1", FieldExpr::expo(mK, {{"a1", RatFun(1)}, {"x", -K}, {"y", -K}}), out.sys->zero_momentum()});
        for (int i = 2; i <= n; ++i)
            out.screenings.push_back(
                {idx("Q", i), FieldExpr::expo(mK, {{idx("a", i), RatFun(1)}}), out.sys->zero_momentum()});
        Realization f = fms_realization();
        out.generators = f.generators;
        out.structure = f.structure;
        std::vector<std::pair<std::string, std::vector<RatFun>>> center;
        for (int i = 1; i <= n; ++i) center.emplace_back(idx("a", i), unit(n, i - 1));
        add_center(out, center, an, cart);
        out.distinguished.emplace_back("H1", heis(an, w1) - G("y"));
        out.annihilated = {"H1"};
        return out;
    }

    if (n < 2) throw Error(Errc::InvalidArgument, "coset systems need n >= 2");
    CosetAmbient amb = alpha_tilde_ambient(p, k);
    Matrix g = current_gram(*amb.sys, amb.fields);
    auto at = names("at", 0, n);
    out.sys = plain_system(at, g);
    out.screenings.push_back({"Q0", FieldExpr::expo(RatFun(1), {{"at0", RatFun(1)}}), out.sys->zero_momentum()});
    for (int i = 1; i < n; ++i)
        out.screenings.push_back(
            {idx("Q", i), FieldExpr::expo(mK, {{idx("at", i), RatFun(1)}}), out.sys->zero_momentum()});
    out.screenings.push_back({idx("Q", n), FieldExpr::expo(RatFun(-1) / (RatFun(r) * K), {{idx("at", n), RatFun(1)}}),
                              out.sys->zero_momentum()});
    Matrix bm = bordermatrix(p, K);
    for (int i = 0; i <= n; ++i) {
        out.generators.emplace_back(at[i], G(at[i]));
        out.structure.gens.push_back(at[i]);
    }
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (!bm[i][j].is_zero()) out.structure.table[{at[i], at[j]}] = {{2, {{"1", bm[i][j]}}}};
    return out;
}

Realization principal_super_realization(const PairTag& p, const RatFun& k, Form form) {
    int n = p.n, r = lacity(p.kind);
    if (n < 1) throw Error(Errc::InvalidArgument, "rank must be >= 1");
    RatFun K = k + R(dual_coxeter2(p));
    require_nonzero(K, "k lies in K2 = {-h2}");
    Realization out;
    out.key = "super-" + std::string(p.kind == PairKind::SL ? "sl" : "osp") + ":" + std::to_string(n) + ":" +
              form_name(form);
    auto an = names("a", 0, n);
    RatFun mK = RatFun(-1) / K;
    std::vector<RatFun> w0;
    for (auto& q : omega0(p)) w0.push_back(R(q));
    Matrix sform = scaled(super_form(p), K);

    if (form == Form::Miura) {
        std::vector<Species> sp{Species::fermion("b", 1, "c"), Species::fermion("c", 0, "b")};
        for (auto& a : an) sp.push_back(Species::heisenberg(a));
        out.sys = register_system(sp, table(an, sform));
        out.screenings.push_back(
            {"Q0", FieldExpr::nord(G("b"), FieldExpr::expo(mK, {{"a0", RatFun(1)}})), out.sys->zero_momentum()});
        for (int i = 1; i <= n; ++i)
            out.screenings.push_back(
                {idx("Q", i), FieldExpr::expo(mK, {{idx("a", i), RatFun(1)}}), out.sys->zero_momentum()});
        FieldExpr cb = FieldExpr::nord(G("c"), G("b"));
        if (n >= 2) {
            RatFun rr(r), rK = RatFun(r) * K;
            out.generators = {{"E11", -cb - rr * G("a0") - rr * G("a1")},
                              {"E12", G("b")},
                              {"E21", -rr * FieldExpr::nord(G("c"), G("a0")) - rK * FieldExpr::deriv(G("c"))},
                              {"E22", cb + rr * G("a1")}};
            gl11_structure(out.structure, -rK, rK + RatFun(1));
            std::vector<std::pair<std::string, std::vector<RatFun>>> center;
            auto v = unit(n + 1, 2);
            v[0] = RatFun(p.kind == PairKind::SO && n == 2 ? -2 : -1);
            center.emplace_back("J2", v);
            for (int i = 3; i <= n; ++i) center.emplace_back(idx("J", i), unit(n + 1, i));
            add_center(out, center, an, sform);
        }
        out.distinguished.emplace_back("H2", heis(an, w0) + FieldExpr::nord(G("b"), G("c")));
        out.annihilated = {"H2"};
        FieldExpr e1 = FieldExpr::expo(mK, {{"a1", RatFun(1)}});
        out.distinguished.emplace_back("S_a1", e1);
        out.distinguished.emplace_back("S_a0a1", -FieldExpr::nord(G("c"), e1));
        if (p.kind == PairKind::SL && n >= 2) {
            int m = n + 2;
            CovarianceData c;
            c.parity.assign(m, 1);
            c.parity[0] = 0;
            std::vector<Rat> d11(m), d22(m), dj(m);
            d11[0] = 1;
            d11[2] = 1;
            d22[1] = 1;
            d22[2] = -1;
            c.currents.emplace_back("E11", diag(d11));
            c.currents.emplace_back("E12", elem(m, 0, 1));
            c.currents.emplace_back("E21", elem(m, 1, 0));
            c.currents.emplace_back("E22", diag(d22));
            dj[0] = dj[1] = dj[2] = 1;
            dj[3] = -1;
            c.currents.emplace_back("J2", diag(dj));
            for (int i = 3; i <= n; ++i) {
                std::vector<Rat> d(m);
                d[i] = 1;
                d[i + 1] = -1;
                c.currents.emplace_back(idx("J", i), diag(d));
            }
            c.roots.emplace_back("S_a1", elem(m, 1, 2));
            c.roots.emplace_back("S_a0a1", elem(m, 0, 2));
            out.covariance = c;
        }
        return out;
    }

    if (form == Form::Bosonized) {
        out.sys = bosonized_super_system(p, K);
        out.screenings.push_back(
            {"Q0", FieldExpr::expo(mK, {{"a0", RatFun(1)}, {"phi", -K}}), out.sys->zero_momentum()});
        for (int i = 1; i <= n; ++i)
            out.screenings.push_back(
                {idx("Q", i), FieldExpr::expo(mK, {{idx("a", i), RatFun(1)}}), out.sys->zero_momentum()});
        Realization bf = boson_fermion_realization();
        out.generators = bf.generators;
        out.structure = bf.structure;
        std::vector<std::pair<std::string, std::vector<RatFun>>> center;
        for (int i = 0; i <= n; ++i) center.emplace_back(idx("a", i), unit(n + 1, i));
        add_center(out, center, an, sform);
        out.distinguished.emplace_back("H2", heis(an, w0) + G("phi"));
        out.annihilated = {"H2"};
        return out;
    }

    if (n < 2) throw Error(Errc::InvalidArgument, "coset systems need n >= 2");
    CosetAmbient amb = beta_tilde_ambient(p, k);
    Matrix g = current_gram(*amb.sys, amb.fields);
    auto bt = names("bt", 0, n);
    out.sys = plain_system(bt, g);
    for (int i = 0; i <= n; ++i)
        out.screenings.push_back(
            {idx("Q", i), FieldExpr::expo(RatFun(1), {{bt[i], RatFun(1)}}), out.sys->zero_momentum()});
    Matrix bm = bordermatrix(p, RatFun(1) / (RatFun(r) * K));
    for (int i = 0; i <= n; ++i) {
        out.generators.emplace_back(bt[i], G(bt[i]));
        out.structure.gens.push_back(bt[i]);
    }
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (!bm[i][j].is_zero()) out.structure.table[{bt[i], bt[j]}] = {{2, {{"1", bm[i][j]}}}};
    return out;
}

std::vector<NamedCurrent> distinguished_currents(const PairTag& p, const RatFun& k1, const RatFun& k2) {
    Realization a = subregular_realization(p, k1, Form::Miura);
    Realization b = principal_super_realization(p, k2, Form::Miura);
    return {{"H1", a.field("H1"), a.sys}, {"H2", b.field("H2"), b.sys}};
}

KSFields ks_fields(const PairTag& p, const RatFun& k2) {
    int n = p.n, r = lacity(p.kind);
    if (n < 2) throw Error(Errc::InvalidArgument, "Kazama-Suzuki fields need n >= 2");
    KSFields ks;
    ks.K2 = k2 + R(dual_coxeter2(p));
    require_nonzero(ks.K2, "k2 lies in K2 = {-h2}");
    ks.K1 = RatFun(1) / (RatFun(r) * ks.K2);
    RatFun rr(r);

    {
        std::vector<Species> sp{Species::heisenberg("phi")};
        auto bn = names("b", 0, n);
        for (auto& b : bn) sp.push_back(Species::heisenberg(b));
        sp.push_back(Species::heisenberg("psi"));
        std::vector<std::string> all{"phi"};
        all.insert(all.end(), bn.begin(), bn.end());
        all.push_back("psi");
        Matrix g(n + 3, std::vector<RatFun>(n + 3));
        g[0][0] = RatFun(1);
        g[n + 2][n + 2] = RatFun(-1);
        Matrix s = scaled(super_form(p), ks.K2);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) g[i + 1][j + 1] = s[i][j];
        ks.a_sys = register_system(sp, table(all, g), {"phi", "psi"});
        RatFun inv = RatFun(1) / ks.K2;
        ks.a_side.emplace_back("X", -inv * G("b0") + G("phi"));
        ks.a_side.emplace_back("Y", inv * G("b0") + G("psi"));
        ks.a_side.emplace_back("A1", rr * G("b1") - G("phi") - G("psi"));
        for (int i = 2; i < n; ++i) ks.a_side.emplace_back(idx("A", i), rr * G(idx("b", i)));
        ks.a_side.emplace_back(idx("A", n), G(idx("b", n)));
        std::vector<RatFun> w0;
        for (auto& q : omega0(p)) w0.push_back(R(q));
        ks.a_side.emplace_back("Ht2", heis(bn, w0) + G("phi") + G("psi"));
    }
    {
        std::vector<Species> sp{Species::heisenberg("x"), Species::heisenberg("y")};
        auto an = names("a", 1, n);
        for (auto& a : an) sp.push_back(Species::heisenberg(a));
        sp.push_back(Species::heisenberg("phi"));
        std::vector<std::string> all{"x", "y"};
        all.insert(all.end(), an.begin(), an.end());
        all.push_back("phi");
        Matrix g(n + 3, std::vector<RatFun>(n + 3));
        g[0][0] = RatFun(1);
        g[1][1] = RatFun(-1);
        g[n + 2][n + 2] = RatFun(1);
        Matrix c = scaled(cartan_form(p), ks.K1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g[i + 2][j + 2] = c[i][j];
        ks.b_sys = register_system(sp, table(all, g), {"x", "y", "phi"});
        ks.b_side.emplace_back("phit", G("x") + G("y") + G("phi"));
        ks.b_side.emplace_back("B0", -G("y") - G("phi"));
        ks.b_side.emplace_back("B1", G("a1") - ks.K1 * (G("x") + G("y")));
        for (int i = 2; i < n; ++i) ks.b_side.emplace_back(idx("B", i), G(idx("a", i)));
        ks.b_side.emplace_back(idx("B", n), rr * G(idx("a", n)));
        std::vector<RatFun> w1;
        for (auto& q : omega1(p)) w1.push_back(-R(q));
        ks.b_side.emplace_back("Ht1", heis(an, w1) + G("y") + G("phi"));
    }
    return ks;
}

Realization realization_by_key(const std::string& key, const RatFun& level, const RatFun& level2) {
    if (key == "gl11-wakimoto") return gl11_wakimoto(level, level2);
    if (key == "fms") return fms_realization();
    if (key == "boson-fermion") return boson_fermion_realization();
    std::vector<std::string> parts;
    std::stringstream ss(key);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw Error(Errc::ParseError, "unknown catalog key '" + key + "'");
    int n = 0;
    try {
        n = std::stoi(parts[1]);
    } catch (...) {
        throw Error(Errc::ParseError, "bad rank in key '" + key + "'");
    }
    Form form = parse_form(parts[2]);
    if (parts[0] == "subregular-sl") return subregular_realization({PairKind::SL, n}, level, form);
    if (parts[0] == "subregular-so") return subregular_realization({PairKind::SO, n}, level, form);
    if (parts[0] == "super-sl") return principal_super_realization({PairKind::SL, n}, level, form);
    if (parts[0] == "super-osp") return principal_super_realization({PairKind::SO, n}, level, form);
    throw Error(Errc::ParseError, "unknown catalog key '" + key + "'");
}

std::vector<std::string> catalog_keys() {
    std::vector<std::string> k{"gl11-wakimoto", "fms", "boson-fermion"};
    for (const char* fam : {"subregular-sl", "subregular-so", "super-sl", "super-osp"})
        for (int n = 2; n <= 3; ++n)
            for (const char* f : {"miura", "bosonized", "coset"})
                k.push_back(std::string(fam) + ":" + std::to_string(n) + ":" + f);
    return k;
}

}  // namespace wfree

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "wfree/cli.hpp"

using namespace wfree;

namespace {

constexpr std::uint64_t kSeed = 20261016;

Rat q(long p, long d = 1) {
    Rat r(p, d);
    r.canonicalize();
    return r;
}

struct Outcome {
    bool ok = true;
    std::string note;
    void need(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            note += (note.empty() ? "" : "; ") + what;
        }
    }
    void need(const Report& r, const std::string& what) {
        if (r.pass()) return;
        std::string first;
        for (auto& i : r.items)
            if (!i.equal) {
                first = i.id;
                break;
            }
        need(false, what + (first.empty() ? "" : " (" + first + ")"));
    }
};

std::vector<long> left_dims(const Report& r) {
    std::vector<long> v;
    for (auto& d : r.per_degree) v.push_back(d.dim_left);
    return v;
}

std::vector<long> right_dims(const Report& r) {
    std::vector<long> v;
    for (auto& d : r.per_degree) v.push_back(d.dim_right);
    return v;
}

// a sampled level whose dual avoids the excluded sets
Rat generic_k1(const PairTag& p, std::uint64_t seed) {
    for (auto& k : sample_levels(seed, 64)) {
        if (!excluded_set(p, 1, k).empty()) continue;
        if (!excluded_set(p, 2, dual_level(p, k)).empty()) continue;
        return k;
    }
    throw Error(Errc::InvalidArgument, "no generic level sampled");
}

Outcome c1() {
    Outcome o;
    RatFun t = RatFun::t();
    Report r = check_homomorphism(gl11_wakimoto(t, t.pow(7)));
    o.need(r.items.size() == 16, "16 generator pairs");
    o.need(r, "wakimoto homomorphism");
    return o;
}

Outcome c2() {
    Outcome o;
    o.need(check_homomorphism(fms_realization()), "beta gamma from lattice");
    o.need(check_homomorphism(boson_fermion_realization()), "b c from lattice");
    return o;
}

Outcome c3() {
    Outcome o;
    auto s = sample_levels(kSeed, 2);
    std::vector<std::pair<Rat, Rat>> levels{{q(7, 2), q(1, 3)}, {s[0], s[1]}};
    for (auto& [k1, k2] : levels) {
        Report r = check_resolution(k1, k2, 3, 2, 4);
        std::string tag = "(" + to_string(k1) + "," + to_string(k2) + ")";
        o.need(r, "resolution " + tag);
        o.need(left_dims(r) == std::vector<long>{1, 4, 12, 32}, "kernel dims " + tag);
        int annihilated = 0;
        for (auto& i : r.items)
            if (i.id.rfind("annihilate:", 0) == 0 && i.equal) ++annihilated;
        o.need(annihilated == 4, "four generator states " + tag);
    }
    return o;
}

Outcome c4() {
    Outcome o;
    std::vector<long> want{1, 0, 1, 1, 2, 2, 4};
    for (auto K : {q(7, 2), q(5, 3)}) {
        Report r = check_rank1_ff_duality(K, 6);
        o.need(r, "K=" + to_string(K));
        o.need(left_dims(r) == want && right_dims(r) == want, "dims at K=" + to_string(K));
    }
    return o;
}

Outcome c5() {
    Outcome o;
    for (auto kind : {PairKind::SL, PairKind::SO})
        for (int n = 2; n <= 3; ++n) o.need(check_gram_duality({kind, n}), pair_name(kind) + std::to_string(n));
    return o;
}

Outcome c6() {
    Outcome o;
    PairTag sl{PairKind::SL, 2}, so{PairKind::SO, 2};
    std::vector<std::tuple<PairTag, Rat, int>> cases{{sl, q(-14, 5), 4},
                                                     {so, q(-5, 2), 3},
                                                     {sl, generic_k1(sl, kSeed + 1), 4},
                                                     {so, generic_k1(so, kSeed + 2), 3}};
    for (auto& [p, k1, D] : cases) {
        Report r = check_coset_duality(p, k1, D);
        o.need(r, pair_name(p.kind) + " k1=" + to_string(k1));
        o.need(static_cast<int>(r.per_degree.size()) == D + 1, "degrees 0.." + std::to_string(D));
    }
    return o;
}

Outcome c7() {
    Outcome o;
    auto levels = sample_levels(kSeed + 3, 2);
    for (auto kind : {PairKind::SL, PairKind::SO})
        for (int n = 2; n <= 3; ++n)
            for (auto form : {Form::Miura, Form::Bosonized}) {
                PairTag p{kind, n};
                std::string tag = pair_name(kind) + std::to_string(n) + ":" + form_name(form);
                Report a = check_annihilation(subregular_realization(p, RatFun(levels[0]), form));
                Report b = check_annihilation(principal_super_realization(p, RatFun(levels[1]), form));
                o.need(!a.items.empty() && !b.items.empty(), "screenings present " + tag);
                o.need(a, "H1 " + tag);
                o.need(b, "H2 " + tag);
            }
    return o;
}

Outcome c8() {
    Outcome o;
    for (auto kind : {PairKind::SL, PairKind::SO})
        for (int n = 1; n <= 3; ++n) {
            Report r = norm_degeneracy({kind, n});
            o.need(r, pair_name(kind) + std::to_string(n));
            if (kind == PairKind::SL && n == 2) {
                bool formula = false;
                for (auto& i : r.items)
                    if (i.id == "formula:H1") formula = i.equal;
                o.need(formula, "(H1|H1) = (2/3)(k+3) - 1");
            }
        }
    return o;
}

Outcome c9() {
    Outcome o;
    RatFun t = RatFun::t();
    for (auto kind : {PairKind::SL, PairKind::SO})
        for (int n = 2; n <= 3; ++n) o.need(check_ks({kind, n}, t), pair_name(kind) + std::to_string(n));
    return o;
}

Outcome c10() {
    Outcome o;
    auto v = sample_levels(kSeed + 4, 20);
    std::vector<DeltaSample> s;
    for (int i = 0; i < 5; ++i) s.push_back({v[4 * i], v[4 * i + 1], v[4 * i + 2], v[4 * i + 3]});
    Report r = check_delta(s);
    o.need(r.items.size() == 10, "two top vectors per sample");
    o.need(r, "conformal dimensions");
    return o;
}

Outcome c11() {
    Outcome o;
    auto v = sample_levels(kSeed + 5, 2);
    for (auto& key : catalog_keys()) {
        Realization r = realization_by_key(key, RatFun(v[0]), RatFun(v[1]));
        o.need(check_counting(*r.sys, r.sys->zero_momentum(), 8, key), key);
    }
    return o;
}

Outcome c12() {
    Outcome o;
    std::vector<std::vector<std::string>> controls{
        {"verify", "--key", "subregular-sl:2:miura", "--suite", "covariance", "--level", "5/13", "--perturb"},
        {"verify", "--key", "super-sl:2:miura", "--suite", "covariance", "--level", "5/13", "--perturb"},
        {"verify", "--key", "super-sl:3:miura", "--suite", "covariance", "--level", "5/13", "--perturb"},
        {"ks-check", "--pair", "sl", "--n", "2", "--k2", "3", "--perturb"},
        {"ks-check", "--pair", "so", "--n", "3", "--symbolic", "--perturb"},
    };
    for (auto& args : controls) {
        std::ostringstream out, err;
        int code = run_command(args, out, err);
        std::string cmd;
        for (auto& a : args) cmd += (cmd.empty() ? "" : " ") + a;
        o.need(code == ExitFail, cmd + " exited " + std::to_string(code));
        std::vector<std::string> clean;
        for (auto& a : args)
            if (a != "--perturb") clean.push_back(a);
        int base = run_command(clean, out, err);
        o.need(base == ExitPass, "unperturbed " + cmd + " exited " + std::to_string(base));
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all{
        {1, "wakimoto homomorphism, symbolic levels", 1, c1},
        {2, "bosonization of beta gamma and b c", 1, c2},
        {3, "screening resolution", 30, c3},
        {4, "rank one kernel duality", 30, c4},
        {5, "symbolic coset gram duality", 5, c5},
        {6, "coset kernel duality", 600, c6},
        {7, "distinguished currents in the screening kernels", 60, c7},
        {8, "degeneracy constants", 5, c8},
        {9, "kazama-suzuki fields", 60, c9},
        {10, "conformal dimensions", 10, c10},
        {11, "counting consistency", 60, c11},
        {12, "negative controls exit 1", 60, c12},
    };
    int failed = 0;
    for (auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.note = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit) o.need(false, "over the " + std::to_string(static_cast<int>(c.limit)) + " s budget");
        std::ostringstream line;
        line << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.name << "  ("
             << std::fixed;
        line.precision(2);
        line << secs << " s)";
        if (!o.ok) line << "  " << o.note;
        std::cout << line.str() << std::endl;
        if (!o.ok) ++failed;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed"))
              << std::endl;
    return failed ? 1 : 0;
}

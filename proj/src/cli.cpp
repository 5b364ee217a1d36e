#include "wfree/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace wfree {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string pair = "sl";
    int n = 2;
    std::string k1, k2, level, level2, K, mu1, mu2, key;
    std::string suite = "all";
    std::string out, format, config, out_dir;
    int max_degree = -1;
    int compose_degree = -1;
    int terms = 2;
    int samples = -1;
    int charge = 0;
    bool symbolic = false;
    bool perturb = false;
    bool rank1 = false;
    std::uint64_t seed = 1;
    long basis_cap = 20000;
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

void load_config(const std::string& path, Options& o) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot read config '" + path + "'");
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::ParseError, path + ":" + std::to_string(no) + ": expected key = value");
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        try {
            if (k == "max-degree")
                o.max_degree = std::stoi(v);
            else if (k == "seed")
                o.seed = std::stoull(v);
            else if (k == "out-dir")
                o.out_dir = v;
            else if (k == "basis-cap")
                o.basis_cap = std::stol(v);
            else if (k == "format")
                o.format = v;
            else
                throw Error(Errc::ParseError, path + ":" + std::to_string(no) + ": unknown key '" + k + "'");
        } catch (const std::logic_error&) {
            throw Error(Errc::ParseError, path + ":" + std::to_string(no) + ": bad value '" + v + "'");
        }
    }
}

// "--k1 -14/5" would otherwise read as a short flag
std::vector<std::string> glue_negative_values(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && i + 1 < args.size()) {
            const std::string& v = args[i + 1];
            if (v.size() > 1 && v[0] == '-' && (std::isdigit(static_cast<unsigned char>(v[1])) || v[1] == '.')) {
                out.push_back(a + "=" + v);
                ++i;
                continue;
            }
        }
        out.push_back(a);
    }
    return out;
}

int exit_for(Errc c) { return c == Errc::ResourceLimit ? ExitResource : ExitInput; }

PairTag pair_of(const Options& o) {
    if (o.n < 1) throw Error(Errc::InvalidArgument, "--n must be positive");
    return PairTag{parse_pair(o.pair), o.n};
}

RatFun level_arg(const std::string& s) {
    if (s.find('t') != std::string::npos) return parse_ratfun(s);
    return RatFun(parse_rat(s));
}

Rat rat_arg(const std::string& s, const char* flag) {
    if (s.empty()) throw Error(Errc::InvalidArgument, std::string(flag) + " is required");
    return parse_rat(s);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> w;
    for (auto& r : rows)
        for (size_t i = 0; i < r.size(); ++i) {
            if (w.size() <= i) w.push_back(0);
            w[i] = std::max(w[i], r[i].size());
        }
    std::ostringstream os;
    for (auto& r : rows) {
        std::string line;
        for (size_t i = 0; i < r.size(); ++i) {
            std::string cell = r[i];
            if (i + 1 < r.size()) cell += std::string(w[i] - cell.size() + 2, ' ');
            line += cell;
        }
        os << line << "\n";
    }
    return os.str();
}

}  // namespace

std::string emit_report(const Report& r, const std::string& command, const std::string& format, bool single_dim) {
    std::string status = r.pass() ? "pass" : "fail";
    if (format == "json") {
        json j;
        j["command"] = command;
        json in = json::object();
        for (auto& [k, v] : r.inputs) {
            if (!in.contains(k)) {
                in[k] = v;
                continue;
            }
            if (!in[k].is_array()) in[k] = json::array({in[k]});
            in[k].push_back(v);
        }
        j["inputs"] = in;
        json items = json::array();
        for (auto& i : r.items)
            items.push_back({{"id", i.id}, {"expected", i.expected}, {"computed", i.computed}, {"equal", i.equal}});
        j["items"] = items;
        json rows = json::array();
        for (auto& d : r.per_degree) {
            if (single_dim)
                rows.push_back({{"degree", d.degree}, {"dim", d.dim_left}});
            else
                rows.push_back({{"degree", d.degree},
                                {"dim_left", d.dim_left},
                                {"dim_right", d.dim_right},
                                {"equal", d.equal}});
        }
        j["per_degree"] = rows;
        j["status"] = status;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    if (format == "csv") {
        if (!r.per_degree.empty() || single_dim) {
            os << (single_dim ? "degree,dim\n" : "degree,dim_left,dim_right,equal\n");
            for (auto& d : r.per_degree) {
                os << d.degree << "," << d.dim_left;
                if (!single_dim) os << "," << d.dim_right << "," << (d.equal ? "true" : "false");
                os << "\n";
            }
        } else {
            os << "id,expected,computed,equal\n";
            for (auto& i : r.items)
                os << csv_field(i.id) << "," << csv_field(i.expected) << "," << csv_field(i.computed) << ","
                   << (i.equal ? "true" : "false") << "\n";
        }
        return os.str();
    }
    if (format != "text") throw Error(Errc::InvalidArgument, "unknown format '" + format + "'");
    os << command << " (" << r.suite << ")\n";
    for (auto& [k, v] : r.inputs) os << "  " << k << " = " << v << "\n";
    if (!r.items.empty()) {
        std::vector<std::vector<std::string>> rows{{"id", "expected", "computed", "equal"}};
        for (auto& i : r.items) rows.push_back({i.id, i.expected, i.computed, i.equal ? "yes" : "NO"});
        os << "\n" << table(rows);
    }
    if (!r.per_degree.empty()) {
        std::vector<std::vector<std::string>> rows;
        if (single_dim)
            rows.push_back({"degree", "dim"});
        else
            rows.push_back({"degree", "left", "right", "equal"});
        for (auto& d : r.per_degree) {
            if (single_dim)
                rows.push_back({std::to_string(d.degree), std::to_string(d.dim_left)});
            else
                rows.push_back({std::to_string(d.degree), std::to_string(d.dim_left), std::to_string(d.dim_right),
                                d.equal ? "yes" : "NO"});
        }
        os << "\n" << table(rows);
    }
    os << "\nstatus: " << status << "\n";
    return os.str();
}

namespace {

std::ostream* warn_stream = nullptr;
void warn(const std::string& msg) {
    if (warn_stream) *warn_stream << "warning: " << msg << "\n";
}

struct Outcome {
    Report report;
    bool single_dim = false;
};

Outcome cmd_verify(const Options& o) {
    if (o.key.empty()) throw Error(Errc::InvalidArgument, "--key is required");
    RatFun l1, l2;
    if (o.symbolic) {
        l1 = RatFun::t();
        l2 = RatFun::t().pow(7);
    } else {
        auto s = sample_levels(o.seed, 2);
        l1 = o.level.empty() ? RatFun(s[0]) : level_arg(o.level);
        l2 = o.level2.empty() ? RatFun(s[1]) : level_arg(o.level2);
    }
    Realization r = realization_by_key(o.key, l1, l2);
    if (o.perturb) r = perturb_companion(r);
    Report rep;
    rep.suite = "verify";
    rep.input("key", o.key);
    rep.input("level", l1.str());
    rep.input("level2", l2.str());
    rep.input("suite", o.suite);
    if (o.perturb) rep.input("perturb", "companion");
    bool any = false;
    if (o.suite == "all" || o.suite == "homomorphism") {
        rep.absorb(check_homomorphism(r), "homomorphism:");
        any = true;
    }
    if (o.suite == "all" || o.suite == "annihilation") {
        rep.absorb(check_annihilation(r), "annihilation:");
        any = true;
    }
    if ((o.suite == "all" && r.covariance) || o.suite == "covariance") {
        rep.absorb(check_screening_covariance(r), "covariance:");
        any = true;
    }
    if (!any) throw Error(Errc::InvalidArgument, "unknown suite '" + o.suite + "'");
    return {rep};
}

Outcome cmd_kernel(const Options& o) {
    if (o.key.empty()) throw Error(Errc::InvalidArgument, "--key is required");
    auto s = sample_levels(o.seed, 2);
    RatFun l1 = o.level.empty() ? RatFun(s[0]) : level_arg(o.level);
    RatFun l2 = o.level2.empty() ? RatFun(s[1]) : level_arg(o.level2);
    int D = o.max_degree < 0 ? 4 : o.max_degree;
    Realization r = realization_by_key(o.key, l1, l2);
    const System& sys = *r.sys;
    std::vector<GradedMap> maps;
    for (auto& op : r.screenings) maps.push_back(residue_map(sys, op, 0, D, o.charge));
    KernelReport k = joint_kernel(sys, sys.zero_momentum(), maps, 0, D, o.charge);
    Report rep;
    rep.suite = "kernel";
    rep.input("key", o.key);
    rep.input("level", l1.str());
    rep.input("level2", l2.str());
    rep.input("charge", std::to_string(o.charge));
    rep.input("max_degree", std::to_string(D));
    for (size_t i = 0; i < k.degrees.size(); ++i) rep.per_degree.push_back({k.degrees[i], k.dims[i], k.dims[i], true});
    return {rep, true};
}

Outcome cmd_duality(const Options& o) {
    if (o.rank1) {
        int D = o.max_degree < 0 ? 6 : o.max_degree;
        std::vector<Rat> Ks;
        if (!o.K.empty()) Ks.push_back(parse_rat(o.K));
        int extra = o.samples >= 0 ? o.samples : (o.K.empty() ? 2 : 0);
        for (auto& v : sample_levels(o.seed, extra)) Ks.push_back(v);
        if (Ks.size() == 1) return {check_rank1_ff_duality(Ks[0], D)};
        Report rep;
        rep.suite = "rank1-duality";
        for (auto& K : Ks) {
            rep.input("K", to_string(K));
            rep.absorb(check_rank1_ff_duality(K, D), "K=" + to_string(K) + ":");
        }
        rep.input("max_degree", std::to_string(D));
        return {rep};
    }
    PairTag p = pair_of(o);
    int D = o.max_degree < 0 ? 4 : o.max_degree;
    std::vector<Rat> levels;
    if (!o.k1.empty()) levels.push_back(parse_rat(o.k1));
    int extra = o.samples >= 0 ? o.samples : (o.k1.empty() ? 2 : 0);
    for (auto& v : sample_levels(o.seed, extra)) levels.push_back(v);
    for (auto& k : levels)
        if (is_admissible(p, k)) warn("k1 = " + to_string(k) + " is admissible; kernel dimensions may jump");
    if (levels.size() == 1) return {check_coset_duality(p, levels[0], D)};
    Report rep;
    rep.suite = "coset-duality";
    rep.input("pair", pair_name(p.kind));
    rep.input("n", std::to_string(p.n));
    rep.input("max_degree", std::to_string(D));
    for (auto& k : levels) {
        rep.input("k1", to_string(k));
        rep.absorb(check_coset_duality(p, k, D), "k1=" + to_string(k) + ":");
    }
    return {rep};
}

Outcome cmd_gram(const Options& o) {
    PairTag p = pair_of(o);
    if (o.symbolic || o.k1.empty()) return {check_gram_duality(p)};
    Rat k1 = parse_rat(o.k1);
    Rat k2 = dual_level(p, k1);
    auto a = alpha_tilde_ambient(p, RatFun(k1));
    auto b = beta_tilde_ambient(p, RatFun(k2));
    Matrix ga = current_gram(*a.sys, a.fields), gb = current_gram(*b.sys, b.fields);
    Report rep;
    rep.suite = "gram";
    rep.input("pair", pair_name(p.kind));
    rep.input("n", std::to_string(p.n));
    rep.input("k1", to_string(k1));
    rep.input("k2", to_string(k2));
    for (size_t i = 0; i < ga.size(); ++i)
        for (size_t j = 0; j < ga.size(); ++j)
            rep.add("(" + std::to_string(i) + "," + std::to_string(j) + ")", gb[i][j].str(), ga[i][j].str(),
                    ga[i][j] == gb[i][j]);
    return {rep};
}

Outcome cmd_ks(const Options& o) {
    PairTag p = pair_of(o);
    RatFun k2 = (o.symbolic || o.k2.empty()) ? RatFun::t() : RatFun(parse_rat(o.k2));
    return {check_ks(p, k2, o.perturb)};
}

Outcome cmd_resolution(const Options& o) {
    Rat k1 = rat_arg(o.k1, "--k1"), k2 = rat_arg(o.k2, "--k2");
    int D = o.max_degree < 0 ? 3 : o.max_degree;
    return {check_resolution(k1, k2, D, o.terms, o.compose_degree)};
}

Outcome cmd_norm(const Options& o) { return {norm_degeneracy(pair_of(o))}; }

Outcome cmd_delta(const Options& o) {
    std::vector<DeltaSample> s;
    if (!o.k1.empty())
        s.push_back({parse_rat(o.k1), rat_arg(o.k2, "--k2"), rat_arg(o.mu1, "--mu1"), rat_arg(o.mu2, "--mu2")});
    int extra = o.samples >= 0 ? o.samples : (s.empty() ? 5 : 0);
    auto v = sample_levels(o.seed, 4 * extra);
    for (int i = 0; i < extra; ++i) s.push_back({v[4 * i], v[4 * i + 1], v[4 * i + 2], v[4 * i + 3]});
    return {check_delta(s)};
}

Outcome cmd_catalog(const Options& o) {
    Report rep;
    rep.suite = "catalog";
    if (o.key.empty()) {
        for (auto& k : catalog_keys()) rep.add(k, "", "", true);
        return {rep};
    }
    RatFun l1 = o.level.empty() ? RatFun::t() : level_arg(o.level);
    RatFun l2 = o.level2.empty() ? RatFun::t() : level_arg(o.level2);
    Realization r = realization_by_key(o.key, l1, l2);
    rep.input("key", r.key);
    rep.input("level", l1.str());
    for (auto& sp : r.sys->species()) rep.add("species:" + sp.name, "", "", true);
    for (auto& [n, f] : r.generators) rep.add("generator:" + n, "", f.str(), true);
    for (auto& op : r.screenings) rep.add("screening:" + op.name, "", op.field.str(), true);
    for (auto& [n, f] : r.distinguished) rep.add("distinguished:" + n, "", f.str(), true);
    if (r.conformal.valid()) rep.add("conformal", "", r.conformal.str(), true);
    return {rep};
}

}  // namespace

int run_command(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"free field checks for W-algebra dualities", "wfree"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", "0.1.0");

    auto common = [&](CLI::App* s) {
        s->add_option("--out", o.out, "write the report to this path");
        s->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_option("--seed", o.seed, "seed for sampled levels");
        s->add_option("--config", o.config, "key = value defaults file");
        s->add_option("--basis-cap", o.basis_cap, "states per degree slice, 0 for no cap");
        s->add_option("--max-degree", o.max_degree);
    };
    auto pair = [&](CLI::App* s) {
        s->add_option("--pair", o.pair, "sl or so")->check(CLI::IsMember({"sl", "so"}));
        s->add_option("--n", o.n, "rank");
    };

    auto* verify = app.add_subcommand("verify", "homomorphism, annihilation and covariance of a catalog entry");
    common(verify);
    verify->add_option("--key", o.key);
    verify->add_option("--level", o.level);
    verify->add_option("--level2", o.level2);
    verify->add_option("--suite", o.suite)
        ->check(CLI::IsMember({"all", "homomorphism", "annihilation", "covariance"}));
    verify->add_flag("--symbolic", o.symbolic);
    verify->add_flag("--perturb", o.perturb, "negate the companion screening field");

    auto* kernel = app.add_subcommand("kernel", "graded joint kernel of a catalog entry's screenings");
    common(kernel);
    kernel->add_option("--key", o.key);
    kernel->add_option("--level", o.level);
    kernel->add_option("--level2", o.level2);
    kernel->add_option("--charge", o.charge);

    auto* duality = app.add_subcommand("duality", "coset kernel duality, or rank one with --rank1");
    common(duality);
    pair(duality);
    duality->add_option("--k1", o.k1);
    duality->add_option("--K", o.K);
    duality->add_flag("--rank1", o.rank1);
    duality->add_option("--samples", o.samples, "extra sampled levels");

    auto* gram = app.add_subcommand("gram", "coset Gram matrices under the level relation");
    common(gram);
    pair(gram);
    gram->add_option("--k1", o.k1);
    gram->add_flag("--symbolic", o.symbolic);

    auto* ks = app.add_subcommand("ks-check", "Kazama-Suzuki field checks");
    common(ks);
    pair(ks);
    ks->add_option("--k2", o.k2);
    ks->add_flag("--symbolic", o.symbolic);
    ks->add_flag("--perturb", o.perturb, "drop the psi term from A1");

    auto* res = app.add_subcommand("resolution", "screening resolution of the gl(1|1) Wakimoto module");
    common(res);
    res->add_option("--k1", o.k1);
    res->add_option("--k2", o.k2);
    res->add_option("--terms", o.terms);
    res->add_option("--compose-degree", o.compose_degree);

    auto* norm = app.add_subcommand("norm", "norms of the distinguished currents");
    common(norm);
    pair(norm);

    auto* delta = app.add_subcommand("delta", "conformal dimensions of Wakimoto top spaces");
    common(delta);
    delta->add_option("--k1", o.k1);
    delta->add_option("--k2", o.k2);
    delta->add_option("--mu1", o.mu1);
    delta->add_option("--mu2", o.mu2);
    delta->add_option("--samples", o.samples);

    auto* cat = app.add_subcommand("catalog", "list catalog keys or show one entry");
    common(cat);
    cat->add_option("--key", o.key);
    cat->add_option("--level", o.level);
    cat->add_option("--level2", o.level2);

    std::vector<std::string> args = glue_negative_values(raw);
    // config first so that flags override it
    std::string cfg;
    if (const char* env = std::getenv("WFREE_CONFIG")) cfg = env;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) cfg = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) cfg = args[i].substr(9);
    }
    try {
        if (!cfg.empty()) load_config(cfg, o);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return ExitInput;
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o1, o2;
        int code = app.exit(e, o1, o2);
        out << o1.str();
        err << o2.str();
        return code == 0 ? ExitPass : ExitInput;
    }

    CLI::App* sub = app.get_subcommands().front();
    std::string name = sub->get_name();
    warn_stream = &err;
    long saved_cap = Limits::basis_cap;
    Limits::basis_cap = o.basis_cap;
    try {
        Outcome res;
        if (name == "verify") res = cmd_verify(o);
        else if (name == "kernel") res = cmd_kernel(o);
        else if (name == "duality") res = cmd_duality(o);
        else if (name == "gram") res = cmd_gram(o);
        else if (name == "ks-check") res = cmd_ks(o);
        else if (name == "resolution") res = cmd_resolution(o);
        else if (name == "norm") res = cmd_norm(o);
        else if (name == "delta") res = cmd_delta(o);
        else res = cmd_catalog(o);
        Limits::basis_cap = saved_cap;

        std::string path = o.out;
        if (!path.empty() && !o.out_dir.empty() && std::filesystem::path(path).is_relative())
            path = (std::filesystem::path(o.out_dir) / path).string();
        std::string fmt = o.format;
        if (fmt.empty()) {
            std::string ext = std::filesystem::path(path).extension().string();
            fmt = ext == ".json" ? "json" : ext == ".csv" ? "csv" : "text";
        }
        std::string text = emit_report(res.report, name, fmt, res.single_dim);
        if (path.empty()) {
            out << text;
        } else {
            std::ofstream f(path, std::ios::binary);
            if (!f || !(f << text)) throw Error(Errc::IoError, "cannot write '" + path + "'");
            out << name << ": " << (res.report.pass() ? "pass" : "fail") << " -> " << path << "\n";
        }
        if (!res.report.pass())
            for (auto& i : res.report.items)
                if (!i.equal) err << "failed: " << i.id << "\n";
        return res.report.pass() ? ExitPass : ExitFail;
    } catch (const Error& e) {
        Limits::basis_cap = saved_cap;
        err << "error: " << e.what() << "\n";
        return exit_for(e.code());
    }
}

}  // namespace wfree

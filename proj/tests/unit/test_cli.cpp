#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "wfree/cli.hpp"

using namespace wfree;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "wfree-cli-tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("duality report as json") {
    auto path = scratch("r.json");
    Run r = run({"duality", "--pair", "sl", "--n", "2", "--k1", "-14/5", "--max-degree", "4", "--out", path.string()});
    CHECK(r.code == ExitPass);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto j = nlohmann::ordered_json::parse(ss.str());
    CHECK(j["status"] == "pass");
    CHECK(j["command"] == "duality");
    CHECK(j["per_degree"].size() == 5);
    CHECK(j["per_degree"][4]["degree"] == 4);
    CHECK(j.dump(2) + "\n" == ss.str());
}

TEST_CASE("identical arguments give identical bytes") {
    std::vector<std::string> a{"delta", "--samples", "3", "--seed", "9", "--format", "json"};
    CHECK(run(a).out == run(a).out);
    std::vector<std::string> b{"verify", "--key", "fms", "--format", "text"};
    CHECK(run(b).out == run(b).out);
}

TEST_CASE("input errors exit 2") {
    Run r = run({"duality", "--pair", "sl", "--n", "2", "--k1", "-3"});
    CHECK(r.code == ExitInput);
    CHECK(r.err.find("K1") != std::string::npos);
    CHECK(run({"duality", "--pair", "sl", "--n", "2", "--k1", "-3/2"}).code == ExitInput);
    CHECK(run({"duality", "--pair", "xx"}).code == ExitInput);
    CHECK(run({"resolution", "--k1", "0", "--k2", "1"}).code == ExitInput);
    CHECK(run({"delta", "--k1", "1/0", "--k2", "0", "--mu1", "0", "--mu2", "0"}).code == ExitInput);
    CHECK(run({}).code == ExitInput);
}

TEST_CASE("admissible levels warn on stderr") {
    Run r = run({"duality", "--pair", "sl", "--n", "2", "--k1", "-1/2", "--max-degree", "2"});
    CHECK(r.err.find("warning: k1 = -1/2 is admissible") != std::string::npos);
    CHECK(run({"duality", "--pair", "sl", "--n", "2", "--k1", "-14/5", "--max-degree", "2"}).err.empty());
}

TEST_CASE("gram prints the bordermatrix") {
    Run r = run({"gram", "--pair", "so", "--n", "3", "--symbolic"});
    CHECK(r.code == ExitPass);
    CHECK(r.out.find("4*t+20") != std::string::npos);
}

TEST_CASE("kernel csv and text layouts") {
    Run c = run({"kernel", "--key", "subregular-sl:2:coset", "--level", "-14/5", "--max-degree", "3", "--format", "csv"});
    CHECK(c.code == ExitPass);
    CHECK(c.out == "degree,dim\n0,1\n1,0\n2,1\n3,2\n");
    Run t = run({"norm", "--pair", "so", "--n", "2", "--format", "text"});
    CHECK(t.code == ExitPass);
    CHECK(t.out.substr(t.out.rfind("status:")) == "status: pass\n");
}

TEST_CASE("config defaults and overrides") {
    auto cfg = scratch("wfree.conf");
    {
        std::ofstream f(cfg);
        f << "# defaults\nmax-degree = 2\nformat = csv\n";
    }
    Run r = run({"kernel", "--key", "subregular-sl:2:coset", "--level", "-14/5", "--config", cfg.string()});
    CHECK(r.out == "degree,dim\n0,1\n1,0\n2,1\n");
    Run o = run({"kernel", "--key", "subregular-sl:2:coset", "--level", "-14/5", "--config", cfg.string(),
                 "--max-degree", "1"});
    CHECK(o.out == "degree,dim\n0,1\n1,0\n");

    setenv("WFREE_CONFIG", cfg.string().c_str(), 1);
    Run e = run({"kernel", "--key", "subregular-sl:2:coset", "--level", "-14/5"});
    unsetenv("WFREE_CONFIG");
    CHECK(e.out == "degree,dim\n0,1\n1,0\n2,1\n");

    auto bad = scratch("bad.conf");
    {
        std::ofstream f(bad);
        f << "colour = blue\n";
    }
    CHECK(run({"norm", "--config", bad.string()}).code == ExitInput);
}

TEST_CASE("resource cap exits 3") {
    Run r = run({"kernel", "--key", "super-sl:3:miura", "--level", "3/7", "--max-degree", "6", "--basis-cap", "50"});
    CHECK(r.code == ExitResource);
    CHECK(Limits::basis_cap == 0);
}

TEST_CASE("negative controls exit 1") {
    CHECK(run({"verify", "--key", "super-sl:2:miura", "--suite", "covariance", "--level", "5/13", "--perturb"}).code ==
          ExitFail);
    CHECK(run({"ks-check", "--pair", "sl", "--n", "3", "--perturb"}).code == ExitFail);
    CHECK(run({"duality", "--rank1", "--K", "2"}).code == ExitFail);
    CHECK(run({"duality", "--rank1", "--K", "7/2"}).code == ExitPass);
}

TEST_CASE("catalog listing") {
    Run r = run({"catalog", "--format", "csv"});
    CHECK(r.out.find("subregular-so:3:coset") != std::string::npos);
    Run s = run({"catalog", "--key", "gl11-wakimoto", "--format", "text"});
    CHECK(s.out.find("-:c b: + chi1") != std::string::npos);
}

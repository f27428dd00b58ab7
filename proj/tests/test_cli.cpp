#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "okas/effective.hpp"
#include "okas/field_io.hpp"

using namespace okas;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run okas_run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path workdir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("okas_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

double value_of(const std::string& report, const std::string& key)
{
    const std::string line = "\n" + report;
    const std::size_t at = line.find("\n" + key + "=");
    REQUIRE(at != std::string::npos);
    return std::stod(line.substr(at + key.size() + 2));
}

}  // namespace

TEST_CASE("no subcommand or unknown options are rejected")
{
    CHECK(okas_run({}).code != 0);
    CHECK(okas_run({"frobnicate"}).code != 0);
    CHECK(okas_run({"effective", "--mass"}).code != 0);
    CHECK(okas_run({"effective", "--dim", "4", "--mass", "1"}).code != 0);
    CHECK(okas_run({"--help"}).code == 0);
}

TEST_CASE("green")
{
    const Run self = okas_run({"green", "--dim", "3", "--self-constant"});
    REQUIRE(self.code == 0);
    CHECK(first_line(self.out) == "cutoff,value,delta");
    CHECK(value_of(self.out, "g0") == doctest::Approx(regular_part_at_zero(3)).epsilon(1e-12));
    const Run at = okas_run({"green", "--dim", "2", "--at", "0.25,0.1"});
    REQUIRE(at.code == 0);
    CHECK(value_of(at.out, "G") == doctest::Approx(green_value(Vec3{0.25, 0.1, 0.0}, 2)).epsilon(1e-10));
    CHECK(okas_run({"green", "--dim", "2", "--at", "0,0"}).code == 1);
}

TEST_CASE("effective")
{
    const Run r = okas_run({"effective", "--dim", "3", "--mass", "30", "--sigma", "1"});
    REQUIRE(r.code == 0);
    CHECK(value_of(r.out, "n_opt") == 2);
    CHECK(value_of(r.out, "m_star") == doctest::Approx(m_star(1.0)).epsilon(1e-10));
    const Run sweep = okas_run({"effective", "--dim", "2", "--mass", "1", "--sweep", "1:10:10"});
    REQUIRE(sweep.code == 0);
    const std::size_t table = sweep.out.find("m,value,n_opt\n");
    REQUIRE(table != std::string::npos);
    CHECK(std::count(sweep.out.begin() + table, sweep.out.end(), '\n') == 12);  // header and 11 masses, both ends included
    CHECK(okas_run({"effective", "--dim", "2", "--mass", "1", "--sweep", "1:10"}).code == 1);
}

TEST_CASE("mollify and sharp on a droplet file")
{
    const fs::path dir = workdir("mollify");
    {
        std::ofstream c(dir / "drops.txt");
        c << "# one disk\n0 0 1\n";
    }
    const std::string field = (dir / "field.txt").string();
    const Run m = okas_run({"mollify", "--config", (dir / "drops.txt").string(), "--eta", "0.3", "--eps", "0.02",
                            "--alpha", "0.05", "--grid", "256", "--out", field});
    REQUIRE(m.code == 0);
    CHECK(first_line(m.out) == "perimeter,interfacial,energy_bound,energy_bound_ok,l1_distance,l1_bound,l1_bound_ok,c0");
    const ScalarField u = read_field(fs::path(field));
    CHECK(u.grid().n() == 256);
    CHECK(u.grid().dim() == 2);

    const Run g = okas_run({"sharp", "--config", (dir / "drops.txt").string(), "--eta", "0.3", "--grid", "256"});
    const Run a = okas_run({"sharp", "--config", (dir / "drops.txt").string(), "--eta", "0.3", "--mode", "asymptotic"});
    REQUIRE(g.code == 0);
    REQUIRE(a.code == 0);
    CHECK(value_of(g.out, "total") > 0.0);
    CHECK(value_of(a.out, "leading") > 0.0);
    CHECK(okas_run({"sharp", "--config", (dir / "missing.txt").string(), "--eta", "0.3"}).code != 0);
    fs::remove_all(dir);
}

TEST_CASE("minimize writes a field and a trace")
{
    const fs::path dir = workdir("minimize");
    const std::string field = (dir / "v.txt").string(), trace = (dir / "trace.csv").string();
    const Run r = okas_run({"minimize", "--dim", "2", "--eta", "0.3", "--eps", "0.05", "--grid", "64", "--steps", "10",
                            "--init", "const", "--noise", "0.01", "--out", field, "--trace", trace});
    REQUIRE(r.code == 0);
    const std::string t = slurp(trace);
    CHECK(first_line(t) == "step,interfacial,well,nonlocal,total,mass");
    CHECK(std::count(t.begin(), t.end(), '\n') == 12);

    // restart from the written field
    const Run again = okas_run({"minimize", "--dim", "2", "--eta", "0.3", "--eps", "0.05", "--grid", "64", "--steps",
                                "5", "--init", field, "--out", field, "--trace", trace});
    REQUIRE(again.code == 0);
    CHECK(value_of(again.out, "energy") <= value_of(r.out, "energy") * (1 + 1e-9));
    CHECK(okas_run({"minimize", "--dim", "2", "--eta", "0.3", "--eps", "0.05", "--grid", "32", "--init", field, "--out",
                    field, "--trace", trace})
              .code == 1);
    fs::remove_all(dir);
}

TEST_CASE("place")
{
    const fs::path dir = workdir("place");
    const std::string csv = (dir / "pos.csv").string();
    const Run r = okas_run({"place", "--dim", "2", "--n", "3", "--restarts", "3", "--seed", "4", "--out", csv});
    REQUIRE(r.code == 0);
    const std::string t = slurp(csv);
    CHECK(first_line(t) == "index,x,y,nn_distance");
    CHECK(std::count(t.begin(), t.end(), '\n') == 4);
    CHECK(value_of(r.out, "gradient_norm") <= 1e-8);
    CHECK(okas_run({"place", "--n", "0"}).code != 0);
    fs::remove_all(dir);
}

TEST_CASE("expand from a config file with a flag override")
{
    const fs::path dir = workdir("expand");
    {
        std::ofstream c(dir / "plan.ini");
        c << "[expand]\ndim = 2\nmass = 1\netas = 0.25,0.2\nregime = second\ngrid = 64\n";
    }
    const std::string out = (dir / "report").string();
    const Run r = okas_run({"expand", "--config", (dir / "plan.ini").string(), "--grid", "128", "--svg", "--out", out});
    REQUIRE(r.code == 0);
    const std::string csv = slurp(fs::path(out) / "summary.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find("\n0.25,") != std::string::npos);
    CHECK(csv.find(",128,") != std::string::npos);  // the flag won over the file
    CHECK(slurp(fs::path(out) / "fit.txt").find("a = ") != std::string::npos);
    CHECK(fs::exists(fs::path(out) / "energy.svg"));
    CHECK(okas_run({"expand", "--etas", "0.2,0.25", "--out", out}).code == 1);
    fs::remove_all(dir);
}

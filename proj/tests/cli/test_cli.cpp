#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kExe = FOPID_EXE;
const fs::path kProblems = FOPID_PROBLEMS_DIR;

struct Scratch {
    fs::path dir;
    Scratch() : dir(fs::temp_directory_path() / ("fopid_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    fs::path operator/(const std::string& name) const { return dir / name; }
};

int run(const std::string& args) {
    const std::string command = kExe.string() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

const char* kIntegerProblem = R"({
    "plant": {"num": [[1.0, 0.0]], "den": [[1.0, 0.0], [0.5, 0.9], [0.8, 2.2]]},
    "spec": {"mp": 0.1, "t_rise": 0.3},
    "mode": "integer", "algorithm": "pso", "restarts": 2, "seed": 3,
    "optimizer": {"max_iters": 3000}
})";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("help and usage errors") {
    CHECK(run("--help") == 0);
    CHECK(run("") != 0);
    CHECK(run("design") == 3);
    CHECK(run("design --config /nonexistent.json") == 3);
}

TEST_CASE("malformed problems exit with 3") {
    Scratch tmp;
    write(tmp / "broken.json", "{ not json");
    CHECK(run("design --config " + (tmp / "broken.json").string()) == 3);
    write(tmp / "bad_spec.json", R"({"plant": {"num": [[1,0]], "den": [[1,0]]},
                                     "spec": {"mp": 2.0, "t_rise": 0.3}})");
    CHECK(run("design --config " + (tmp / "bad_spec.json").string()) == 3);
    write(tmp / "ok.json", kIntegerProblem);
    CHECK(run("design --config " + (tmp / "ok.json").string() + " --algorithm ga") == 3);
    CHECK(run("design --config " + (tmp / "ok.json").string() + " --bound-handling wrap") == 3);
}

TEST_CASE("design writes a report, CSV and traces") {
    Scratch tmp;
    write(tmp / "problem.json", kIntegerProblem);
    const auto report = tmp / "report.json";
    const int code = run("design --quiet --config " + (tmp / "problem.json").string() +
                         " --out " + report.string() + " --csv " + (tmp / "best.csv").string() +
                         " --trace-dir " + (tmp / "traces").string());
    CHECK((code == 0 || code == 1));
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(j["runs"].size() == 2);
    CHECK(j["mode"] == "integer");
    CHECK_FALSE(j["selected"].is_null());
    CHECK(code == (j["spec_met"].get<bool>() ? 0 : 1));
    CHECK(slurp(tmp / "best.csv").rfind("time,output\n", 0) == 0);
    CHECK(slurp(tmp / "traces" / "run_0.csv").rfind("iteration,best_fitness\n", 0) == 0);

    // Same seed, same bytes.
    const auto again = tmp / "again.json";
    run("design --quiet --config " + (tmp / "problem.json").string() + " --out " +
        again.string() + " --threads 2");
    CHECK(slurp(report) == slurp(again));

    CHECK(run("report " + report.string() + " --json " + (tmp / "tables.json").string()) == 0);
    CHECK(nlohmann::json::parse(slurp(tmp / "tables.json"))["metrics"].size() == 1);
}

TEST_CASE("no convergence exits with 2") {
    Scratch tmp;
    write(tmp / "problem.json", R"({
        "plant": {"num": [[1.0, 0.0]], "den": [[1.0, 0.0], [0.5, 0.9], [0.8, 2.2]]},
        "spec": {"mp": 0.1, "t_rise": 0.3}, "restarts": 1,
        "optimizer": {"max_iters": 1, "tolerance": 1e-12}
    })");
    CHECK(run("design --quiet --config " + (tmp / "problem.json").string()) == 2);
}

TEST_CASE("evaluate and simulate") {
    const auto problem = (kProblems / "fractional_plant.json").string();
    CHECK(run("evaluate --config " + problem + " --kp 60.86 --ti 14.03 --td 13.63") == 0);
    CHECK(run("evaluate --config " + problem + " --kp 60.86 --ti 14.03") == 3);
    CHECK(run("evaluate --config " + problem + " --kp -1 --ti 1 --td 1") == 3);

    Scratch tmp;
    const auto csv = tmp / "response.csv";
    CHECK(run("simulate --config " + problem +
              " --kp 419.57 --ti 638.72 --td 49.83 --lambda 0.25 --delta 1.26 --csv " +
              csv.string()) == 0);
    const auto text = slurp(csv);
    CHECK(text.rfind("time,output\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2002);
    CHECK(run("simulate --config " + problem + " --open-loop --csv " + csv.string()) == 0);
}

}

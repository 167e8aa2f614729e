// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "parab/flow.hpp"
#include "parab/suites.hpp"

using namespace parab;

namespace {

struct Line {
    int id;
    std::string title;
    bool pass;
    std::string detail;
    std::vector<std::string> failures;
};

std::string describe(const std::vector<SuiteResult>& rs) {
    std::ostringstream os;
    for (size_t i = 0; i < rs.size(); ++i) {
        if (i) os << "; ";
        os << rs[i].name << " " << rs[i].cases << " cases " << rs[i].failures.size() << " failures";
        os.precision(2);
        os << std::fixed << " " << rs[i].seconds << "s";
    }
    return os.str();
}

bool all_ok(const std::vector<SuiteResult>& rs) {
    for (const auto& r : rs)
        if (!r.ok()) return false;
    return true;
}

std::string coords_arg(const Fq& a) {
    std::string s;
    for (auto c : a.coords()) s += (s.empty() ? "" : ",") + std::to_string(c);
    return s;
}

// Runs `cli flow` on non-root lambda1 values from F_9 over lambda0 = 2 and expects status 4.
std::pair<bool, std::string> cli_non_periodic(const std::string& cli) {
    if (cli.empty() || !std::filesystem::exists(cli)) return {false, "CLI binary not found"};
    const Field& f9 = Field::get(3, 2);
    Fq l0 = f9.of(2);
    Poly d = det_poly_lambda1(3, l0);
    int tried = 0, good = 0;
    for (const auto& l1 : f9.elements()) {
        if (d.eval(l1).is_zero()) continue;
        std::string cmd = "\"" + cli + "\" flow --p 3 --ext-degree 2 --lambda0 " + coords_arg(l0) + " --lambda1 " +
                          coords_arg(l1) + " --format csv > /dev/null 2>&1";
        int st = std::system(cmd.c_str());
        ++tried;
        if (st != -1 && WIFEXITED(st) && WEXITSTATUS(st) == 4) ++good;
        if (tried == 6) break;
    }
    return {tried >= 5 && good == tried,
            "cli flow: " + std::to_string(good) + "/" + std::to_string(tried) + " non-root lambda1 exit 4"};
}

}  // namespace

int main(int argc, char** argv) {
    SuiteOptions o;
    std::string cli;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc)
            cli = argv[++i];
        else if (a == "--seed" && i + 1 < argc)
            o.seed = std::stoull(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--cli PATH] [--seed N]\n";
            return 2;
        }
    }
    if (cli.empty()) cli = (std::filesystem::path(argv[0]).parent_path() / "parab_cli").string();

    auto t0 = std::chrono::steady_clock::now();
    auto run = [&](std::initializer_list<const char*> names) {
        std::vector<SuiteResult> rs;
        for (const char* n : names) rs.push_back(run_suite(n, o));
        return rs;
    };

    std::vector<Line> lines;
    auto add = [&](int id, const std::string& title, const std::vector<SuiteResult>& rs, bool extra = true,
                   const std::string& more = "") {
        std::string d = describe(rs);
        if (!more.empty()) d += "; " + more;
        std::vector<std::string> fs;
        for (const auto& r : rs)
            for (const auto& m : r.failures) fs.push_back(r.name + ": " + m);
        lines.push_back({id, title, all_ok(rs) && extra, d, fs});
    };

    auto delta = run({"delta"});
    add(1, "Delta closed form equals the Cech boundary map", delta, delta[0].seconds < 10.0, "budget 10s");
    add(2, "det is monic of degree p in lambda1", run({"det"}));
    add(3, "root multiplicity totals p", run({"roots"}));
    add(4, "Deligne-Illusie cocycle equals the closed form", run({"di"}));
    add(5, "Cartier and inverse Cartier round trips", run({"cartier"}));
    add(6, "Cartier descent operator", run({"descent"}));
    add(7, "BIS round trips on cyclic covers", run({"bis"}));
    add(8, "pullback commutes with inverse Cartier", run({"functoriality"}));
    add(9, "algebra layer property suites", run({"arith", "p1", "algebra", "serialize", "connections"}));
    auto [cli_ok, cli_detail] = cli_non_periodic(cli);
    add(10, "flow fixed points and non-periodic verdicts", run({"flow"}), cli_ok, cli_detail);

    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "total %.2fs, budget 300s", total);
    lines.push_back({11, "whole suite within the time budget", total < 300.0, buf, {}});

    bool ok = true;
    for (const auto& l : lines) {
        std::cout << (l.pass ? "PASS" : "FAIL") << " criterion " << l.id << ": " << l.title << " (" << l.detail << ")\n";
        ok = ok && l.pass;
    }
    for (const auto& l : lines)
        for (size_t i = 0; i < l.failures.size() && i < 5; ++i) std::cout << "  [" << l.id << "] " << l.failures[i] << "\n";
    return ok ? 0 : 1;
}

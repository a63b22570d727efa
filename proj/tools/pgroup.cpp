// Command-line driver for the constrained descendant search.
//
// Exit codes: 0 success / search terminated, 1 verification or oracle
// failure, 2 search truncated by the order/class caps, 3 bad configuration.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "pgroup/cases.hpp"
#include "pgroup/oracle.hpp"

using namespace pgroup;

namespace {

struct Flags {
    std::string case_id, config_path, tree_mode = "full", out_dir;
    int stage = 0;  // 0 = all stages
    long assignment = 0;
    std::string max_order;
    int max_class = 0;
    int jobs = 1;
};

SearchConfig load_config(const Flags& f) {
    if (!f.case_id.empty()) return builtin_config(f.case_id);
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw std::invalid_argument("cannot open " + f.config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }
    throw std::invalid_argument("need --case or --config");
}

RunOptions options_from(const Flags& f) {
    RunOptions o;
    o.jobs = f.jobs;
    o.assignment = f.assignment;
    if (f.stage > 0) o.stage_limit = f.stage;
    if (!f.max_order.empty()) o.max_order = cpp_int(f.max_order);
    if (f.max_class > 0) o.max_class = f.max_class;
    return o;
}

void write_outputs(const RunReport& rep, const Flags& f) {
    if (f.out_dir.empty()) return;
    namespace fs = std::filesystem;
    fs::create_directories(f.out_dir);
    auto put = [&](const std::string& name, const std::string& text) {
        std::ofstream(fs::path(f.out_dir) / name) << text;
    };
    put("report.txt", render_report(rep));
    for (size_t i = 0; i < rep.stages.size(); ++i) {
        std::string tag = "stage" + std::to_string(i + 1);
        put(tag + "_tree.dot", export_tree(rep.stages[i].tower, f.tree_mode == "paper"));
        put(tag + "_candidates.pcp", export_candidates(rep.stages[i].tower));
    }
}

int exit_status(const RunReport& rep) {
    if (rep.stages.empty()) return 3;
    const Tower& last = rep.stages.back().tower;
    return (last.terminated && !last.cap_hit) ? 0 : 2;
}

void add_common(CLI::App* c, Flags& f, bool search_flags) {
    c->add_option("--case", f.case_id, "built-in case id (-2379, -445, -1015, -1595)");
    c->add_option("--config", f.config_path, "search configuration file (JSON)");
    c->add_option("--out", f.out_dir, "output directory");
    if (search_flags) {
        c->add_option("--stage", f.stage, "run only the first N stages");
        c->add_option("--assignment", f.assignment, "target-assignment index");
        c->add_option("--max-order", f.max_order, "override the order cap");
        c->add_option("--max-class", f.max_class, "override the class cap");
        c->add_option("--tree-mode", f.tree_mode, "tree export: full or paper")
            ->check(CLI::IsMember({"full", "paper"}));
        c->add_option("--jobs", f.jobs, "worker threads (affects speed only)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-group generation and constrained descendant search"};
    app.require_subcommand(1);
    Flags f;
    if (const char* env = std::getenv("PGROUP_OUT")) f.out_dir = env;

    auto* run = app.add_subcommand("run", "run a search and print its report");
    add_common(run, f, true);
    auto* verify = app.add_subcommand("verify", "check a case against its expected results");
    add_common(verify, f, false);
    verify->add_option("--jobs", f.jobs, "worker threads");
    auto* oracle = app.add_subcommand("oracle", "run the brute-force oracle suites");
    std::string suite = "all";
    oracle->add_option("--suite", suite, "pcp, linalg, quotient, descend or all")
        ->check(CLI::IsMember({"pcp", "linalg", "quotient", "descend", "all"}));
    auto* exp = app.add_subcommand("export", "run a search and write tree/candidate files");
    add_common(exp, f, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed() || exp->parsed()) {
            SearchConfig cfg;
            RunOptions opt;
            try {
                cfg = load_config(f);
                opt = options_from(f);
            } catch (const std::exception& e) {
                std::cerr << "configuration error: " << e.what() << "\n";
                return 3;
            }
            if (exp->parsed() && f.out_dir.empty()) {
                std::cerr << "configuration error: export needs --out or PGROUP_OUT\n";
                return 3;
            }
            auto rep = run_search(cfg, opt);
            if (run->parsed()) std::cout << render_report(rep);
            write_outputs(rep, f);
            return exit_status(rep);
        }
        if (verify->parsed()) {
            std::vector<std::string> ids;
            if (!f.case_id.empty())
                ids.push_back(f.case_id);
            else
                ids = builtin_case_ids();
            bool all_ok = true;
            for (const auto& id : ids) {
                CheckList cl = verify_presentations(id);
                auto cs = verify_search(id, f.jobs);
                cl.items.insert(cl.items.end(), cs.items.begin(), cs.items.end());
                for (const auto& [name, ok] : cl.items) {
                    std::cout << (ok ? "[ok]   " : "[FAIL] ") << id << ": " << name << "\n";
                    all_ok &= ok;
                }
            }
            return all_ok ? 0 : 1;
        }
        if (oracle->parsed()) {
            std::vector<std::pair<std::string, std::string (*)()>> suites = {
                {"pcp", oracle_suite_pcp},
                {"linalg", oracle_suite_linalg},
                {"quotient", oracle_suite_quotient},
                {"descend", oracle_suite_descend}};
            bool ok = true;
            for (const auto& [name, fn] : suites) {
                if (suite != "all" && suite != name) continue;
                std::string err = fn();
                std::cout << (err.empty() ? "[ok]   " : "[FAIL] ") << name
                          << (err.empty() ? "" : ": " + err) << "\n";
                ok &= err.empty();
            }
            return ok ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

// Command-line front end: expression and ODE parsing, subcommand dispatch,
// JSON and text reports, batch regression over the catalog.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "superint/superint.hpp"

using namespace superint;

namespace {

struct Output {
    std::string path; // empty = stdout
    std::string format = "json";
    bool pretty = false;

    void emit(const json& payload, const std::string& command, const std::string& text_form) const {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open output file " + path);
            os = &file;
        }
        if (format == "json")
            *os << report_envelope(command, payload).dump(2) << "\n";
        else
            *os << text_form;
    }
};

AMap parse_amap(const std::string& text) {
    AMap A;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--A entries must look like A_1_2_2=1");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        if (key.rfind("A_", 0) != 0) throw CLI::ValidationError("--A keys must start with A_");
        int a, m, n;
        if (sscanf(key.c_str(), "A_%d_%d_%d", &a, &m, &n) != 3)
            throw CLI::ValidationError("--A keys must look like A_a_m_n");
        A[{a, m, n}] = parse_expression(val);
    }
    return A;
}

AMap resolve_amap(int N, const std::string& family, const std::string& amap_text) {
    if (!amap_text.empty()) return parse_amap(amap_text);
    if (family == "I") return family_I(N);
    if (family == "II") return family_II(N);
    throw CLI::ValidationError("provide --family I|II or an explicit --A map");
}

int max_level_env() {
    const char* env = std::getenv("WORKBENCH_MAX_LEVEL");
    if (!env) return -1;
    return std::atoi(env);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for Nth-order superintegrable systems separating in Cartesian coordinates"};
    app.require_subcommand(1);

    Output out;
    app.add_option("--out", out.path, "output file (default stdout)");
    app.add_option("--format", out.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--pretty", out.pretty, "mathematical rendering in text output");

    int N = 0, level = 2, max_level = max_level_env();
    std::string family, amap_text, catalog_id, in_path, expr_text;

    auto* c_counts = app.add_subcommand("counts", "determining equation and unknown counts");
    c_counts->add_option("--order,-N", N, "integral order")->required();

    auto* c_deteq = app.add_subcommand("deteq", "generate the determining equations");
    c_deteq->add_option("--order,-N", N, "integral order")->required();
    c_deteq->add_option("--family", family, "leading-term family I or II");
    c_deteq->add_option("--A", amap_text, "explicit A map, e.g. A_1_2_2=1,A_0_3_0=cgamma");
    c_deteq->add_option("--level", max_level, "highest level to generate");

    auto* c_lcc = app.add_subcommand("lcc", "linear compatibility condition and its tau/upsilon split");
    c_lcc->add_option("--order,-N", N, "integral order")->required();
    c_lcc->add_option("--family", family, "leading-term family I or II");
    c_lcc->add_option("--A", amap_text, "explicit A map");

    auto* c_classify = app.add_subcommand("classify", "doubly exotic / singly exotic / standard");
    c_classify->add_option("--order,-N", N, "integral order")->required();
    c_classify->add_option("--family", family, "leading-term family I or II");
    c_classify->add_option("--A", amap_text, "explicit A map");

    auto* c_nlcc = app.add_subcommand("nlcc", "nonlinear compatibility condition of a doubly exotic ansatz");
    c_nlcc->add_option("--order,-N", N, "integral order")->required();
    c_nlcc->add_option("--family", family, "leading-term family I or II");
    c_nlcc->add_option("--A", amap_text, "explicit A map");
    c_nlcc->add_option("--level", level, "compatibility level (default 2)");

    auto* c_pain = app.add_subcommand("painleve", "singularity test of a polynomial ODE");
    c_pain->add_option("--catalog", catalog_id, "catalog id, e.g. N6-II");
    c_pain->add_option("--in", in_path, "ODE file");

    auto* c_verify = app.add_subcommand("verify", "check a catalog potential against the determining equations");
    c_verify->add_option("--catalog", catalog_id, "catalog id")->required();
    c_verify->add_option("--max-level", max_level, "deepest level to check");

    auto* c_run = app.add_subcommand("catalog-run", "regression over every catalog entry");

    auto* c_parse = app.add_subcommand("parse", "parse an expression and print its canonical form");
    c_parse->add_option("expr", expr_text, "expression text")->required();

    auto* c_reduce = app.add_subcommand("reduce-trivial", "drop leading terms that belong to trivial integrals");
    c_reduce->add_option("--order,-N", N, "integral order")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    int status = 0;
    try {
        PrintOptions popt{out.pretty};
        if (c_counts->parsed()) {
            auto [eqs, unk] = counts(N);
            std::ostringstream text;
            text << "equations " << eqs << "\nunknowns " << unk << "\n";
            out.emit({{"equations", eqs}, {"unknowns", unk}}, "counts", text.str());
        } else if (c_deteq->parsed()) {
            IntegralAnsatz ansatz(N, resolve_amap(N, family, amap_text));
            DetSystem sys = determining_system(ansatz, max_level);
            std::ostringstream text;
            for (const auto& lev : sys.levels) {
                text << "level " << lev.l << "\n";
                for (size_t j = 0; j < lev.equations.size(); ++j)
                    text << "  M(" << j << "," << 2 * lev.l << ") = " << to_text(lev.equations[j], popt)
                         << "\n";
            }
            out.emit(to_json(sys), "deteq", text.str());
        } else if (c_lcc->parsed() || c_classify->parsed()) {
            IntegralAnsatz ansatz(N, resolve_amap(N, family, amap_text));
            Classification c = classify(ansatz);
            std::ostringstream text;
            text << "class " << to_string(c.cls) << "\n"
                 << "tau1 = " << to_text(c.witness.tau1, popt) << "\n"
                 << "ups1 = " << to_text(c.witness.ups1, popt) << "\n"
                 << "tau2 = " << to_text(c.witness.tau2, popt) << "\n"
                 << "ups2 = " << to_text(c.witness.ups2, popt) << "\n";
            out.emit(to_json(c, N, ansatz.A()), c_lcc->parsed() ? "lcc" : "classify", text.str());
        } else if (c_nlcc->parsed()) {
            AMap A = resolve_amap(N, family, amap_text);
            bool f2 = family == "II" || (amap_text.empty() && family == "II");
            NlccResult r = nlcc(IntegralAnsatz(N, A), level, f2);
            std::ostringstream text;
            text << "x: " << to_text(r.x_ode, popt) << " = 0\n"
                 << "y: " << to_text(r.y_ode, popt) << " = 0\n";
            out.emit(to_json(r), "nlcc", text.str());
        } else if (c_pain->parsed()) {
            OdeSpec ode;
            if (!catalog_id.empty()) ode = catalog_get(catalog_id).ode();
            else if (!in_path.empty()) ode = parse_ode_file(read_file(in_path));
            else throw CLI::ValidationError("painleve needs --catalog or --in");
            PainleveReport rep = painleve_test(ode);
            std::ostringstream text;
            text << "verdict " << to_string(rep.verdict) << "\n";
            for (const auto& br : rep.branches) {
                text << "  p = " << to_string(br.balance.p) << ", resonances";
                for (const auto& r : br.resonances) text << " " << to_string(r);
                text << ": " << to_string(br.verdict) << "\n";
            }
            out.emit(to_json(rep), "painleve", text.str());
        } else if (c_verify->parsed()) {
            VerifyReport rep = verify_potential(catalog_id, max_level);
            std::ostringstream text;
            text << (rep.consistent ? "consistent" : "NOT consistent") << "\n";
            for (const auto& [k, val] : rep.matching) text << "  " << k << " := " << val << "\n";
            for (const auto& pc : rep.parameter_constraints) text << "  constraint: " << pc << " = 0\n";
            for (const auto& rc : rep.residual_conditions) text << "  residual: " << rc << "\n";
            out.emit(to_json(rep), "verify", text.str());
            if (!rep.error.empty()) status = 1;
        } else if (c_run->parsed()) {
            json entries = json::array();
            std::ostringstream text;
            bool all_ok = true;
            for (const auto& e : catalog()) {
                PainleveReport rep = painleve_test(e.ode());
                bool verdict_ok =
                    rep.verdict == Verdict::Pass || rep.verdict == Verdict::PassWithConstraints;
                bool res_ok = e.expected_resonances.empty();
                for (const auto& br : rep.branches) {
                    if (br.verdict != Verdict::Pass && br.verdict != Verdict::PassWithConstraints) continue;
                    std::vector<long> got;
                    for (const Rat& r : br.resonances)
                        if (!(r == Rat(-1))) got.push_back(static_cast<long>(r.get_num().get_si()));
                    std::sort(got.begin(), got.end());
                    if (got == e.expected_resonances) res_ok = true;
                }
                bool ok = verdict_ok && res_ok;
                all_ok = all_ok && ok;
                entries.push_back({{"id", e.id},
                                   {"verdict", to_string(rep.verdict)},
                                   {"expected", e.expected_resonances},
                                   {"ok", ok}});
                text << (ok ? "[ OK ] " : "[FAIL] ") << e.id << " (" << to_string(rep.verdict) << ")\n";
            }
            out.emit({{"all_ok", all_ok}, {"entries", entries}, {"index", catalog_index_json()}},
                     "catalog-run", text.str());
            if (!all_ok) status = 1;
        } else if (c_parse->parsed()) {
            DPoly p = parse_expression(expr_text);
            out.emit({{"expr", to_text(p)}}, "parse", to_text(p, popt) + "\n");
        } else if (c_reduce->parsed()) {
            TrivialReduction r = reduce_trivial(N, wn_doubly_exotic(N));
            std::ostringstream text;
            for (const auto& rm : r.removed)
                text << "removed A_" << rm.idx.a << "_" << rm.idx.m << "_" << rm.idx.n << ": "
                     << rm.reason << "\n";
            text << r.reduced.size() << " terms kept\n";
            out.emit(to_json(r), "reduce-trivial", text.str());
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    auto t1 = std::chrono::steady_clock::now();
    std::cerr << "elapsed " << std::chrono::duration<double>(t1 - t0).count() << "s\n";
    return status;
}

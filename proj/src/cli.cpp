#include "tangles/cli.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tangles/algebra.hpp"
#include "tangles/constructions.hpp"
#include "tangles/errors.hpp"
#include "tangles/kernel.hpp"
#include "tangles/laws.hpp"
#include "tangles/logic.hpp"
#include "tangles/model_io.hpp"

namespace tangles {

namespace {

/// A set argument is either "{0, 2}" style or the name of a valuation.
PointSet resolve_set(const std::string& token, const Model& m) {
    const int n = m.order.size();
    if (!token.empty() && token.front() == '{') {
        if (token.back() != '}') {
            throw input_error("unterminated set literal: " + token);
        }
        PointSet out(n);
        std::string digits;
        const auto flush = [&]() {
            if (digits.empty()) return;
            const int x = std::stoi(digits);
            if (x >= n) {
                throw input_error("point " + digits +
                                  " leaves the carrier in " + token);
            }
            out = out.with(x);
            digits.clear();
        };
        for (std::size_t i = 1; i + 1 < token.size(); ++i) {
            const char c = token[i];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                digits += c;
            } else if (c == ',' || c == ' ' || c == '\t') {
                flush();
            } else {
                throw input_error(std::string("unexpected '") + c +
                                  "' in set literal " + token);
            }
        }
        flush();
        return out;
    }
    const auto it = m.valuation.find(token);
    if (it == m.valuation.end()) {
        throw input_error("unknown set name '" + token + "'");
    }
    return it->second;
}

int cmd_tangle(const std::string& model_path,
               const std::vector<std::string>& set_tokens,
               const std::string& algo, bool all_algos, int max_points,
               std::ostream& out) {
    const Model m = load_model(model_path);
    std::vector<PointSet> sets;
    sets.reserve(set_tokens.size());
    for (const std::string& token : set_tokens) {
        sets.push_back(resolve_set(token, m));
    }
    const GammaFamily gamma(sets);

    if (all_algos) {
        const PointSet via_gfp = tangle_gfp(m.order, gamma);
        const PointSet via_scc = tangle_scc(m.order, gamma);
        const PointSet via_oracle = tangle_oracle(m.order, gamma, max_points);
        if (via_gfp == via_scc && via_scc == via_oracle) {
            out << via_gfp.to_string() << " AGREE\n";
            return 0;
        }
        out << "gfp: " << via_gfp.to_string() << "\n";
        out << "scc: " << via_scc.to_string() << "\n";
        out << "oracle: " << via_oracle.to_string() << "\n";
        out << "DISAGREE\n";
        return 1;
    }

    PointSet result(m.order.size());
    if (algo == "gfp") {
        result = tangle_gfp(m.order, gamma);
    } else if (algo == "scc") {
        result = tangle_scc(m.order, gamma);
    } else {
        result = tangle_oracle(m.order, gamma, max_points);
    }
    out << result.to_string() << "\n";
    return 0;
}

int cmd_closure(const std::string& model_path, const std::string& set_token,
                bool inner, std::ostream& out) {
    const Model m = load_model(model_path);
    const PointSet a = resolve_set(set_token, m);
    out << (inner ? interior(m.order, a) : closure(m.order, a)).to_string()
        << "\n";
    return 0;
}

int cmd_eval(const std::string& model_path, const std::string& formula_text,
             std::ostream& out) {
    const Model m = load_model(model_path);
    const Formula f = parse_formula(formula_text);
    const PointSet value = eval(f, m);
    out << value.to_string() << "\n";
    if (value == PointSet::full(m.order.size())) {
        out << "VALID\n";
        return 0;
    }
    out << "INVALID at " << value.complement().least() << "\n";
    return 1;
}

int cmd_laws(const std::string& model_path, std::uint64_t seed,
             std::ostream& out) {
    const Model m = load_model(model_path);
    SubsetStrategy strategy;
    strategy.seed = seed;
    bool all = true;
    for (const LawReport& report : check_all_laws(m.order, strategy)) {
        out << report.to_string() << "\n";
        all = all && report.passed;
    }
    return all ? 0 : 1;
}

int cmd_countermodel(const std::string& formula_text, int max_points,
                     std::ostream& out) {
    const Formula f = parse_formula(formula_text);
    const auto hit = countermodel_search(f, max_points);
    if (!hit) {
        out << "no countermodel up to " << max_points << " points\n";
        return 0;
    }
    out << "# countermodel for: " << f.to_string() << "\n";
    out << model_to_text(hit->model);
    out << "# falsified at " << hit->falsified_at << "\n";
    return 1;
}

int cmd_witness(int m, std::ostream& out) {
    const WitnessReport report = sigma_witness(m);
    out << "WITNESS m=" << m << ": " << (report.overall ? "PASS" : "FAIL")
        << "\n";
    if (report.overall) return 0;
    if (!report.p0_holds) out << "  point 0 misses the tangle\n";
    for (std::size_t i = 0; i < report.step_holds.size(); ++i) {
        if (!report.step_holds[i]) {
            out << "  step " << i << " fails\n";
        }
    }
    if (!report.zero_outside_tangle) {
        out << "  the two-sided tangle is nonempty\n";
    }
    return 1;
}

int cmd_enumerate(int n, const std::string& law, std::uint64_t seed,
                  std::ostream& out) {
    SubsetStrategy strategy;
    strategy.seed = seed;

    using Sweep = std::function<LawReport(const QuasiOrder&)>;
    const std::map<std::string, Sweep> sweeps{
        {"kuratowski",
         [&](const QuasiOrder& o) { return check_kuratowski(o, strategy); }},
        {"ic_meet",
         [&](const QuasiOrder& o) { return sweep_ic_meet(o, strategy); }},
        {"fix", [&](const QuasiOrder& o) { return sweep_fix(o, strategy); }},
        {"ind", [&](const QuasiOrder& o) { return sweep_ind(o, strategy); }},
        {"closed_tangle",
         [&](const QuasiOrder& o) { return sweep_closed_tangle(o, strategy); }},
        {"congruence",
         [&](const QuasiOrder& o) { return sweep_congruence(o, strategy); }},
    };
    if (law != "all" && !sweeps.count(law)) {
        throw input_error("unknown law '" + law + "'");
    }

    int checked = 0;
    for (const QuasiOrder& ord : enumerate_quasiorders(n)) {
        ++checked;
        std::vector<LawReport> reports;
        if (law == "all") {
            reports = check_all_laws(ord, strategy);
        } else {
            reports.push_back(sweeps.at(law)(ord));
        }
        for (const LawReport& report : reports) {
            if (report.passed) continue;
            out << "order:\n" << model_to_text(Model{ord, {}});
            out << report.to_string() << "\n";
            return 1;
        }
    }
    out << "ENUMERATE n=" << n << " law=" << law << ": " << checked
        << " orders PASS\n";
    return 0;
}

int cmd_dissect(const std::string& model_path, const std::string& alpha_token,
                int r, int s, std::ostream& out) {
    const Model m = load_model(model_path);
    const PointSet alpha = resolve_set(alpha_token, m);
    const auto witness = dissect_witness_search(m.order, alpha, r, s);
    out << "DISSECT r=" << r << " s=" << s << ": "
        << (witness ? "FOUND" : "NONE") << "\n";
    if (!witness) return 1;
    for (const PointSet& part : witness->open_parts) {
        out << "open " << part.to_string() << "\n";
    }
    for (const PointSet& part : witness->residual_parts) {
        out << "residual " << part.to_string() << "\n";
    }
    return 0;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"finite quasi-order playground for tangled closures"};
    app.require_subcommand(1);

    std::string model_path;
    std::vector<std::string> set_tokens;
    std::string set_token;
    std::string formula_text;
    std::string algo = "gfp";
    std::string law = "all";
    bool all_algos = false;
    int max_points = 3;
    int oracle_bound = 12;
    std::uint64_t seed = 0;
    int m_len = 1;
    int n_points = 1;
    int r_parts = 0;
    int s_parts = 1;

    CLI::App* tangle = app.add_subcommand(
        "tangle", "tangled closure of named or literal sets");
    tangle->add_option("model", model_path, "model file")->required();
    tangle->add_option("sets", set_tokens, "set names or {i, j} literals")
        ->required()
        ->expected(1, 64);
    CLI::Option* algo_opt =
        tangle->add_option("--algo", algo, "gfp, scc, or oracle")
            ->check(CLI::IsMember({"gfp", "scc", "oracle"}));
    tangle->add_flag("--all-algos", all_algos, "run all three and compare")
        ->excludes(algo_opt);
    tangle->add_option("--max-points", oracle_bound,
                       "carrier bound for the oracle");

    CLI::App* closure_cmd =
        app.add_subcommand("closure", "closure of one set");
    closure_cmd->add_option("model", model_path)->required();
    closure_cmd->add_option("set", set_token)->required();

    CLI::App* interior_cmd =
        app.add_subcommand("interior", "interior of one set");
    interior_cmd->add_option("model", model_path)->required();
    interior_cmd->add_option("set", set_token)->required();

    CLI::App* eval_cmd =
        app.add_subcommand("eval", "evaluate a formula on a model");
    eval_cmd->add_option("model", model_path)->required();
    eval_cmd->add_option("formula", formula_text)->required();

    CLI::App* laws_cmd =
        app.add_subcommand("laws", "check the closure and tangle laws");
    laws_cmd->add_option("model", model_path)->required();
    laws_cmd->add_option("--seed", seed, "seed for sampled sweeps");

    CLI::App* counter_cmd = app.add_subcommand(
        "countermodel", "search small models for a falsifying one");
    counter_cmd->add_option("formula", formula_text)->required();
    counter_cmd->add_option("--max-points", max_points,
                            "largest carrier to try");

    CLI::App* witness_cmd = app.add_subcommand(
        "witness", "check the alternation witness down a chain");
    witness_cmd->add_option("m", m_len, "chain length")->required();

    CLI::App* enum_cmd = app.add_subcommand(
        "enumerate", "sweep the laws over every quasi-order of a size");
    enum_cmd->add_option("n", n_points, "carrier size")->required();
    enum_cmd->add_option("--law", law,
                         "kuratowski, ic_meet, fix, ind, closed_tangle, "
                         "congruence, or all");
    enum_cmd->add_option("--seed", seed, "seed for sampled sweeps");

    CLI::App* dissect_cmd = app.add_subcommand(
        "dissect", "search for an open/residual split of an open set");
    dissect_cmd->add_option("model", model_path)->required();
    dissect_cmd->add_option("alpha", set_token, "the open set to split")
        ->required();
    dissect_cmd->add_option("r", r_parts, "open parts")->required();
    dissect_cmd->add_option("s", s_parts, "residual parts")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tangle->parsed()) {
            return cmd_tangle(model_path, set_tokens, algo, all_algos,
                              oracle_bound, out);
        }
        if (closure_cmd->parsed()) {
            return cmd_closure(model_path, set_token, false, out);
        }
        if (interior_cmd->parsed()) {
            return cmd_closure(model_path, set_token, true, out);
        }
        if (eval_cmd->parsed()) {
            return cmd_eval(model_path, formula_text, out);
        }
        if (laws_cmd->parsed()) {
            return cmd_laws(model_path, seed, out);
        }
        if (counter_cmd->parsed()) {
            return cmd_countermodel(formula_text, max_points, out);
        }
        if (witness_cmd->parsed()) {
            return cmd_witness(m_len, out);
        }
        if (enum_cmd->parsed()) {
            return cmd_enumerate(n_points, law, seed, out);
        }
        if (dissect_cmd->parsed()) {
            return cmd_dissect(model_path, set_token, r_parts, s_parts, out);
        }
        err << "error: no command\n";
        return 2;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace tangles

// ptcompat: command-line front end for exact joint-measurability analysis.
//
// Exit status: 0 when the computation finished (whatever the verdict),
// 2 on malformed input, 1 on an internal invariant failure.

#include <ptcompat/ptcompat.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using ptc::io::json;

struct Sink {
    std::string path;

    void write(const std::string& text) const
    {
        if (path.empty() || path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ptc::InputError("cannot open output file '" + path + "'");
        out << text;
    }

    void write(const json& j) const { write(j.dump(2) + "\n"); }
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ptc::InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_file(const std::string& path)
{
    std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') ++line, col = 1;
            else ++col;
        }
        std::string detail = e.what();
        auto at = detail.find("syntax error");
        detail = at == std::string::npos ? "JSON syntax error" : detail.substr(at);
        throw ptc::InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + detail);
    }
}

// An argument is either a JSON file or "catalog:<theory>/<observable>".
std::vector<ptc::Observable> load_observables(const std::vector<std::string>& args)
{
    std::vector<ptc::Observable> out;
    for (const auto& a : args) {
        if (a.rfind("catalog:", 0) == 0) {
            std::string rest = a.substr(8);
            auto slash = rest.rfind('/');
            if (slash == std::string::npos) throw ptc::InputError(a + ": expected catalog:<theory>/<observable>");
            auto theory = ptc::theory_by_name(rest.substr(0, slash));
            auto named = ptc::catalog_observables(theory);
            auto it = named.find(rest.substr(slash + 1));
            if (it == named.end()) throw ptc::InputError(a + ": unknown observable");
            out.push_back(it->second);
            continue;
        }
        auto obs = ptc::io::observables_from(parse_json_file(a), a);
        out.insert(out.end(), obs.begin(), obs.end());
    }
    for (const auto& o : out)
        if (!ptc::same_theory(o.theory(), out.front().theory())) throw ptc::InputError("observables live on different theories");
    return out;
}

ptc::Vector parse_rational_list(const std::string& text)
{
    ptc::Vector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(ptc::parse_rational(item));
    return out;
}

ptc::qubit::BlochVector parse_bloch(const std::string& text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ptc::InputError("bad number '" + item + "' in bloch vector");
        }
    }
    if (v.size() != 3) throw ptc::InputError("bloch vector needs three components");
    return {v[0], v[1], v[2]};
}

void dump_lp_to(const std::string& path, const ptc::LinearProgram& lp)
{
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw ptc::InputError("cannot open LP dump file '" + path + "'");
    ptc::dump(out, lp);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact joint-measurability analysis for finite probabilistic theories"};
    app.require_subcommand(1);

    std::string out_path;
    std::string dump_path;
    std::string format = "json";
    std::uint64_t seed = 0;
    std::size_t directions = 32;
    std::size_t samples = 200;

    // theory
    auto* theory_cmd = app.add_subcommand("theory", "List, show or export catalog theories");
    theory_cmd->require_subcommand(1);
    auto* theory_list = theory_cmd->add_subcommand("list", "List catalog theory names");
    std::string theory_name;
    auto* theory_show = theory_cmd->add_subcommand("show", "Print a theory and its named observables as JSON");
    theory_show->add_option("name", theory_name, "Catalog name")->required();
    auto* theory_export = theory_cmd->add_subcommand("export", "Export a theory, or one of its named observables, as JSON");
    std::string export_observable;
    theory_export->add_option("name", theory_name, "Catalog name")->required();
    theory_export->add_option("--observable", export_observable, "Named observable to export instead of the theory");
    theory_export->add_option("--out", out_path, "Output path (default stdout)");

    // check
    std::vector<std::string> inputs;
    auto* check = app.add_subcommand("check", "Decide joint measurability of the given observables");
    check->add_option("inputs", inputs, "Observable files or catalog:<theory>/<observable>")->required();
    check->add_option("--out", out_path, "Output path (default stdout)");
    check->add_option("--dump-lp", dump_path, "Write the joint LP in plain-text form");

    // index / interval
    auto* index = app.add_subcommand("index", "Compatibility index lambda(M,N)");
    index->add_option("inputs", inputs, "M then N (two files, or one file holding both)")->required()->expected(1, 2);
    index->add_option("--out", out_path, "Output path (default stdout)");
    index->add_option("--dump-lp", dump_path, "Write the index LP in plain-text form");
    auto* interval = app.add_subcommand("interval", "Compatibility interval I(M,N)");
    interval->add_option("inputs", inputs, "M then N (two files, or one file holding both)")->required()->expected(1, 2);
    interval->add_option("--out", out_path, "Output path (default stdout)");

    // region
    std::string lambda_text;
    auto* region = app.add_subcommand("region", "Compatibility region: boundary scan, or membership with --lambda");
    region->add_option("inputs", inputs, "Observable files or catalog references")->required();
    region->add_option("--directions", directions, "Number of scan directions (two observables)");
    region->add_option("--lambda", lambda_text, "Membership query, e.g. 1/2,3/4");
    region->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    region->add_option("--out", out_path, "Output path (default stdout)");
    region->add_option("--dump-lp", dump_path, "Write the first scan LP in plain-text form");

    // classify-state
    std::string state_name;
    std::string state_lambdas;
    auto* classify = app.add_subcommand("classify-state", "Classical/nonclassical test for states of the even-cardinality logic");
    auto* state_opt = classify->add_option("--state", state_name, "delta1..delta4, gamma1..gamma4 or uniform");
    auto* lambdas_opt = classify->add_option("--lambdas", state_lambdas, "s(a),s(b),s(c) as rationals");
    state_opt->excludes(lambdas_opt);
    classify->add_option("--out", out_path, "Output path (default stdout)");

    // estimate-index
    std::size_t outcomes = 2;
    auto* estimate = app.add_subcommand("estimate-index", "Sampled upper bound on the index of a theory");
    estimate->add_option("--theory", theory_name, "Catalog name")->required();
    estimate->add_option("--samples", samples, "Number of sampled observable pairs");
    estimate->add_option("--seed", seed, "Sampler seed");
    estimate->add_option("--outcomes", outcomes, "Outcomes per sampled observable");
    estimate->add_option("--out", out_path, "Output path (default stdout)");

    // qubit
    auto* qubit_cmd = app.add_subcommand("qubit", "Closed-form qubit reference results");
    qubit_cmd->require_subcommand(1);
    double step = 0.005;
    auto* disk = qubit_cmd->add_subcommand("disk", "Quarter-disk region grid as CSV");
    disk->add_option("--step", step, "Grid spacing");
    disk->add_option("--out", out_path, "Output path (default stdout)");
    auto* qindex = qubit_cmd->add_subcommand("index", "Index of the sharp x/y Pauli pair");
    std::string bloch_a, bloch_b;
    auto* qcheck = qubit_cmd->add_subcommand("check", "Unbiased dichotomic compatibility test");
    qcheck->add_option("--a", bloch_a, "x,y,z")->required();
    qcheck->add_option("--b", bloch_b, "x,y,z")->required();

    for (auto* sub : {check, index, interval, region})
        sub->add_option("--seed", seed, "Seed (unused by deterministic solvers; recorded for reproducibility)")->expected(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Sink sink{out_path};

        if (theory_cmd->parsed()) {
            if (theory_list->parsed()) {
                json names = ptc::catalog_names();
                sink.write(names);
            } else if (theory_show->parsed()) {
                auto t = ptc::theory_by_name(theory_name);
                json j = ptc::io::theory_json(*t);
                json named = json::object();
                for (const auto& [name, obs] : ptc::catalog_observables(t)) {
                    json effs = json::array();
                    for (const auto& e : obs.effects()) effs.push_back(ptc::io::vector_json(e.coeffs));
                    named[name] = json{{"outcomes", obs.outcomes()}, {"effects", effs}};
                }
                j["observables"] = named;
                sink.write(j);
            } else if (theory_export->parsed()) {
                auto t = ptc::theory_by_name(theory_name);
                if (export_observable.empty()) {
                    sink.write(ptc::io::theory_json(*t));
                } else {
                    auto named = ptc::catalog_observables(t);
                    auto it = named.find(export_observable);
                    if (it == named.end()) throw ptc::InputError("theory has no observable '" + export_observable + "'");
                    sink.write(ptc::io::observable_json(it->second));
                }
            }
            return 0;
        }

        if (check->parsed()) {
            auto obs = load_observables(inputs);
            auto verdict = ptc::check_compatible(obs);
            dump_lp_to(dump_path, verdict.lp);
            if (!ptc::verify_verdict(obs, verdict)) throw ptc::InvariantError("verdict failed re-verification");
            sink.write(ptc::io::verdict_json(verdict));
            return 0;
        }

        if (index->parsed() || interval->parsed()) {
            auto obs = load_observables(inputs);
            if (obs.size() != 2) throw ptc::InputError("expected exactly two observables");
            if (index->parsed()) {
                std::ostringstream lp_text;
                auto r = ptc::compat_index(obs[0], obs[1], dump_path.empty() ? nullptr : &lp_text);
                if (!dump_path.empty()) {
                    std::ofstream f(dump_path);
                    if (!f) throw ptc::InputError("cannot open LP dump file '" + dump_path + "'");
                    f << lp_text.str();
                }
                sink.write(ptc::io::index_json(r));
            } else {
                sink.write(ptc::io::interval_json(ptc::compat_interval(obs[0], obs[1])));
            }
            return 0;
        }

        if (region->parsed()) {
            auto obs = load_observables(inputs);
            if (!lambda_text.empty()) {
                auto lambdas = parse_rational_list(lambda_text);
                auto verdict = ptc::region_membership(obs, lambdas);
                dump_lp_to(dump_path, verdict.lp);
                if (!ptc::verify_region_verdict(obs, lambdas, verdict)) throw ptc::InvariantError("verdict failed re-verification");
                json j = ptc::io::verdict_json(verdict);
                j["lambda"] = ptc::io::vector_json(lambdas);
                sink.write(j);
                return 0;
            }
            if (obs.size() != 2) throw ptc::InputError("boundary scans use an angular grid and need exactly two observables");
            auto dirs = ptc::default_directions(directions);
            std::vector<ptc::RegionSample> samples_out;
            for (std::size_t i = 0; i < dirs.size(); ++i) {
                std::ostringstream lp_text;
                bool dump_this = i == 0 && !dump_path.empty();
                samples_out.push_back(ptc::region_ray(obs, dirs[i], dump_this ? &lp_text : nullptr));
                if (dump_this) {
                    std::ofstream f(dump_path);
                    if (!f) throw ptc::InputError("cannot open LP dump file '" + dump_path + "'");
                    f << lp_text.str();
                }
            }
            if (format == "csv") {
                std::ostringstream os;
                ptc::io::write_region_csv(os, samples_out);
                sink.write(os.str());
            } else {
                sink.write(ptc::io::region_json(samples_out));
            }
            return 0;
        }

        if (classify->parsed()) {
            std::optional<ptc::LogicState> s;
            json label;
            if (!state_name.empty()) {
                s = ptc::logic_state_by_name(state_name);
                label = state_name;
            } else if (!state_lambdas.empty()) {
                auto v = parse_rational_list(state_lambdas);
                if (v.size() != 3) throw ptc::InputError("--lambdas needs three values");
                s = ptc::LogicState({v[0], v[1], v[2]});
                label = ptc::io::vector_json(v);
            } else {
                throw ptc::InputError("give --state or --lambdas");
            }
            auto c = ptc::classify_logic_state(*s);
            auto six = s->sixtuple();
            json j{{"state", label},
                   {"sixtuple", ptc::io::vector_json(ptc::Vector(six.begin(), six.end()))},
                   {"classification", c.classical ? "classical" : "nonclassical"}};
            if (c.classical) j["measure"] = ptc::io::vector_json(c.measure);
            else j["certificate"] = ptc::io::vector_json(std::get<ptc::lp::Infeasible>(c.outcome).farkas);
            sink.write(j);
            return 0;
        }

        if (estimate->parsed()) {
            auto t = ptc::theory_by_name(theory_name);
            auto est = ptc::theory_index_estimate(t, {samples, outcomes, seed});
            json j{{"theory", t->name()},
                   {"samples", samples},
                   {"outcomes", outcomes},
                   {"seed", seed},
                   {"upper_bound", ptc::to_string(est.upper_bound)},
                   {"upper_bound_approx", ptc::approx_string(est.upper_bound)}};
            if (est.argmin) {
                j["argmin_index"] = est.argmin_index;
                j["argmin"] = json{{"M", ptc::io::observable_json(est.argmin->first)},
                                   {"N", ptc::io::observable_json(est.argmin->second)}};
            }
            sink.write(j);
            return 0;
        }

        if (qubit_cmd->parsed()) {
            if (disk->parsed()) {
                std::ostringstream os;
                ptc::io::write_disk_csv(os, ptc::qubit::pauli_region(step));
                sink.write(os.str());
            } else if (qindex->parsed()) {
                sink.write(json{{"index", ptc::qubit::pauli_index()}});
            } else if (qcheck->parsed()) {
                auto a = parse_bloch(bloch_a);
                auto b = parse_bloch(bloch_b);
                sink.write(json{{"compatible", ptc::qubit::unbiased_compatible(a, b)},
                                {"criterion", (a + b).norm() + (a - b).norm()}});
            }
            return 0;
        }
    } catch (const ptc::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ptc::InvariantError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

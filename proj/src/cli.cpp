#include "icamuv/cli.hpp"

#include "icamuv/io.hpp"
#include "icamuv/service.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <set>

namespace icamuv::cli {
namespace {

struct Common {
    bool strict = true;
    std::string output;
};

void emit(const Common& common, io::DocumentKind kind, io::json payload, std::ostream& out) {
    const std::string text = io::canonical(io::wrap(kind, std::move(payload)));
    if (common.output.empty() || common.output == "-") {
        out << text;
    } else {
        io::write_text_file(common.output, text);
    }
}

int default_port() {
    if (const char* env = std::getenv("ICAMUV_PORT")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
        }
    }
    return 8080;
}

std::vector<NodePair> views_pairs(const GroundTruthInstance& inst, bool co_observed) {
    std::vector<NodePair> out;
    for (NodeId i = 0; i < inst.truth.order(); ++i) {
        for (NodeId j = i + 1; j < inst.truth.order(); ++j) {
            bool together = std::any_of(inst.views.begin(), inst.views.end(),
                                        [&](NodeSet v) { return v.contains(i) && v.contains(j); });
            if (together == co_observed) out.emplace_back(i, j);
        }
    }
    return out;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Integrate CAM-UV results from datasets with overlapping variable sets"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--strict,!--no-strict", common.strict, "Reject unknown fields in input documents")
        ->capture_default_str();

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", common.output, "Output file (default: stdout)");
    };

    // generate
    InstanceParams params;
    std::uint64_t seed = 0;
    std::size_t max_attempts = 10'000;
    auto* generate = app.add_subcommand("generate", "Sample a ground truth DAG and dataset views");
    generate->add_option("--d", params.d, "Number of variables")->capture_default_str();
    generate->add_option("--p", params.p, "Edge probability")->capture_default_str();
    generate->add_option("--m", params.m, "Number of datasets")->capture_default_str();
    generate->add_option("--u", params.u, "Unobserved variables per dataset")->capture_default_str();
    generate->add_option("--seed", seed, "Random seed")->capture_default_str();
    generate->add_option("--max-attempts", max_attempts, "View sampling attempts per truth")
        ->capture_default_str();
    add_output(generate);

    // project
    std::string instance_path;
    auto* project = app.add_subcommand("project", "Ideal CAM-UV results for every view of an instance");
    project->add_option("--instance", instance_path, "Instance file")->required();
    add_output(project);

    // inject
    std::string input_path;
    ErrorPlan errors;
    auto* inject = app.add_subcommand("inject", "Inject estimation errors into CAM-UV results");
    inject->add_option("--input", input_path, "camuv-input file")->required();
    inject->add_option("--spurious-n", errors.spurious_n, "Identified pairs moved into N")->capture_default_str();
    inject->add_option("--dropped-edge", errors.dropped_edge, "Directed edges deleted")->capture_default_str();
    inject->add_option("--dropped-n", errors.dropped_n, "Unidentified pairs deleted")->capture_default_str();
    inject->add_option("--seed", errors.seed, "Random seed")->capture_default_str();
    add_output(inject);

    // enumerate
    SearchOptions search;
    std::string order_name = "constrained-first";
    std::size_t max_seconds = 300;
    bool parallel = false;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate DAGs with cost <= C* + budget");
    enumerate_cmd->add_option("--input", input_path, "camuv-input file")->required();
    enumerate_cmd->add_option("--budget", search.budget, "Cost budget b")->capture_default_str();
    enumerate_cmd->add_option("--order", order_name, "Edge order: constrained-first | lex")
        ->capture_default_str();
    enumerate_cmd->add_option("--max-states", search.limits.max_popped, "Maximum popped states")
        ->capture_default_str();
    enumerate_cmd->add_option("--max-seconds", max_seconds, "Wall-clock limit")->capture_default_str();
    enumerate_cmd->add_flag("--repair", search.repair, "Skip identified edges that close a cycle");
    enumerate_cmd->add_flag("--parallel", parallel, "Evaluate successor bounds with OpenMP");
    add_output(enumerate_cmd);

    // oracle
    std::size_t budget = 0;
    std::size_t cap = oracle::kDefaultOpenPairCap;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference enumeration");
    oracle_cmd->add_option("--input", input_path, "camuv-input file")->required();
    oracle_cmd->add_option("--budget", budget, "Cost budget b")->capture_default_str();
    oracle_cmd->add_option("--cap", cap, "Maximum open pairs")->capture_default_str();
    add_output(oracle_cmd);

    // evaluate
    std::string result_path;
    auto* evaluate = app.add_subcommand("evaluate", "Frequency metrics of a result against its ground truth");
    evaluate->add_option("--result", result_path, "enumeration-result file")->required();
    evaluate->add_option("--instance", instance_path, "Instance file")->required();
    add_output(evaluate);

    // filter
    std::string constraints_path;
    auto* filter = app.add_subcommand("filter", "Keep solutions satisfying a constraint set");
    filter->add_option("--result", result_path, "enumeration-result file")->required();
    filter->add_option("--constraints", constraints_path, "constraints file")->required();
    add_output(filter);

    // sample
    std::size_t sample_n = 3;
    auto* sample = app.add_subcommand("sample", "Uniformly sample solutions");
    sample->add_option("--result", result_path, "enumeration-result file")->required();
    sample->add_option("--n", sample_n, "Sample size")->capture_default_str();
    sample->add_option("--seed", seed, "Random seed")->capture_default_str();
    add_output(sample);

    // serve
    int port = default_port();
    std::string host = "127.0.0.1";
    auto* serve_cmd = app.add_subcommand("serve", "Serve a result over HTTP for the explorer UI");
    serve_cmd->add_option("--result", result_path, "enumeration-result file")->required();
    serve_cmd->add_option("--port", port, "Port (default from ICAMUV_PORT, else 8080)")->capture_default_str();
    serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (generate->parsed()) {
            GroundTruthInstance inst = generate_instance(params, seed, max_attempts);
            emit(common, io::DocumentKind::Instance, io::instance_to_json(inst), out);
        } else if (project->parsed()) {
            auto inst = io::instance_from_json(
                io::read_document(instance_path, io::DocumentKind::Instance, common.strict), common.strict);
            emit(common, io::DocumentKind::CamuvInput, io::input_to_json(project_all(inst)), out);
        } else if (inject->parsed()) {
            auto input = io::input_from_json(
                io::read_document(input_path, io::DocumentKind::CamuvInput, common.strict), common.strict);
            emit(common, io::DocumentKind::CamuvInput, io::input_to_json(inject_errors(input, errors)), out);
        } else if (enumerate_cmd->parsed()) {
            auto input = io::input_from_json(
                io::read_document(input_path, io::DocumentKind::CamuvInput, common.strict), common.strict);
            search.order = parse_edge_order(order_name);
            search.limits.max_time = std::chrono::seconds(max_seconds);
            search.execution = parallel ? Execution::Parallel : Execution::Serial;
            EnumerationResult result = enumerate(input, search);
            emit(common, io::DocumentKind::EnumerationResult, io::result_to_json(result), out);
            err << "enumerate: " << result.solutions.size() << " solutions, popped " << result.stats.popped
                << " states in " << result.stats.wall_seconds << " s (" << to_string(result.stop) << ")\n";
            if (!result.complete()) {
                err << "enumerate: search stopped early; result is partial\n";
                return kPartial;
            }
        } else if (oracle_cmd->parsed()) {
            auto input = io::input_from_json(
                io::read_document(input_path, io::DocumentKind::CamuvInput, common.strict), common.strict);
            io::OracleDocument doc{input.table, oracle::brute_force_enumerate(input, budget, cap)};
            emit(common, io::DocumentKind::OracleResult, io::oracle_to_json(doc), out);
        } else if (evaluate->parsed()) {
            auto result = io::result_from_json(
                io::read_document(result_path, io::DocumentKind::EnumerationResult, common.strict), common.strict);
            auto inst = io::instance_from_json(
                io::read_document(instance_path, io::DocumentKind::Instance, common.strict), common.strict);
            std::vector<Dag> dags;
            for (const Solution& s : result.solutions) dags.push_back(s.dag);
            io::MetricsDocument doc;
            doc.table = result.table;
            doc.report = evaluate_metrics(dags, inst.truth);
            doc.e_uno = evaluate_metrics(dags, inst.truth, views_pairs(inst, false)).restricted;
            doc.observed = evaluate_metrics(dags, inst.truth, views_pairs(inst, true)).restricted;
            emit(common, io::DocumentKind::Metrics, io::metrics_to_json(doc), out);
        } else if (filter->parsed()) {
            auto result = io::result_from_json(
                io::read_document(result_path, io::DocumentKind::EnumerationResult, common.strict), common.strict);
            auto constraints = io::constraints_from_json(
                io::read_document(constraints_path, io::DocumentKind::Constraints, common.strict), result.table,
                common.strict);
            emit(common, io::DocumentKind::EnumerationResult,
                 io::result_to_json(filter_solutions(result, constraints)), out);
        } else if (sample->parsed()) {
            auto result = io::result_from_json(
                io::read_document(result_path, io::DocumentKind::EnumerationResult, common.strict), common.strict);
            std::vector<Solution> kept;
            for (std::size_t i : sample_indices(result.solutions.size(), sample_n, seed)) {
                kept.push_back(result.solutions[i]);
            }
            result.solutions = std::move(kept);
            emit(common, io::DocumentKind::EnumerationResult, io::result_to_json(result), out);
        } else if (serve_cmd->parsed()) {
            auto result = io::result_from_json(
                io::read_document(result_path, io::DocumentKind::EnumerationResult, common.strict), common.strict);
            service::ExplorerService svc(std::move(result), common.strict);
            err << "serving on http://" << host << ":" << port << "\n";
            if (!service::serve(svc, host, port)) {
                err << "error: cannot listen on " << host << ":" << port << "\n";
                return kUsage;
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kOk;
}

} // namespace icamuv::cli

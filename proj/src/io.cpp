#include "icamuv/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace icamuv::io {
namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

// Checks that `obj` is an object holding every required key and, in strict
// mode, nothing outside required + optional.
void expect_object(const json& obj, std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional, bool strict,
                   const std::string& context) {
    require(obj.is_object(), context + ": expected an object");
    for (std::string_view key : required) {
        require(obj.contains(std::string(key)), context + ": missing field '" + std::string(key) + "'");
    }
    if (!strict) return;
    for (const auto& [key, value] : obj.items()) {
        bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                     std::find(optional.begin(), optional.end(), key) != optional.end();
        require(known, context + ": unknown field '" + key + "'");
    }
}

std::size_t as_size(const json& v, const std::string& context) {
    require(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0),
            context + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

std::uint64_t as_u64(const json& v, const std::string& context) {
    require(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0),
            context + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
}

double as_double(const json& v, const std::string& context) {
    require(v.is_number(), context + ": expected a number");
    return v.get<double>();
}

std::optional<double> as_opt_double(const json& v, const std::string& context) {
    if (v.is_null()) return std::nullopt;
    return as_double(v, context);
}

VariableTable table_from(const json& v) {
    require(v.is_array(), "variables: expected an array of names");
    std::vector<std::string> names;
    for (const json& n : v) {
        require(n.is_string(), "variables: names must be strings");
        names.push_back(n.get<std::string>());
    }
    try {
        return VariableTable(std::move(names));
    } catch (const InvalidInput& e) {
        throw ValidationError(std::string("variables: ") + e.what());
    }
}

NodeId id_from(const json& v, std::size_t order, const std::string& context) {
    std::size_t id = as_size(v, context);
    require(id < order, context + ": id " + std::to_string(id) + " out of range");
    return id;
}

NodeId id_or_name(const json& v, const VariableTable& table, const std::string& context) {
    if (v.is_string()) {
        try {
            return table.id_of(v.get<std::string>());
        } catch (const InvalidInput& e) {
            throw ValidationError(context + ": " + e.what());
        }
    }
    return id_from(v, table.size(), context);
}

template <typename Resolve>
std::pair<NodeId, NodeId> pair_from(const json& v, Resolve&& resolve, const std::string& context) {
    require(v.is_array() && v.size() == 2, context + ": expected a two-element array");
    return {resolve(v[0]), resolve(v[1])};
}

std::vector<Edge> edges_from(const json& v, std::size_t order, const std::string& context) {
    require(v.is_array(), context + ": expected an array of edges");
    std::vector<Edge> out;
    for (const json& e : v) {
        auto [a, b] = pair_from(e, [&](const json& x) { return id_from(x, order, context); }, context);
        out.push_back({a, b});
    }
    return out;
}

std::vector<NodePair> pairs_from(const json& v, std::size_t order, const std::string& context) {
    std::vector<NodePair> out;
    for (const Edge& e : edges_from(v, order, context)) out.emplace_back(e.from, e.to);
    return out;
}

NodeSet nodes_from(const json& v, std::size_t order, const std::string& context) {
    require(v.is_array(), context + ": expected an array of ids");
    NodeSet s;
    for (const json& id : v) s.insert(id_from(id, order, context));
    return s;
}

json edges_json(const std::vector<Edge>& edges) {
    json out = json::array();
    for (const Edge& e : edges) out.push_back({e.from, e.to});
    return out;
}

json pairs_json(const std::vector<NodePair>& pairs) {
    json out = json::array();
    for (const NodePair& p : pairs) out.push_back({p.lo, p.hi});
    return out;
}

json nodes_json(NodeSet s) { return json(s.to_vector()); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json scores_json(const EdgeScores& s) {
    return {{"mtp", s.mtp},           {"mfp", s.mfp},
            {"mfn", s.mfn},           {"recall", opt_json(s.recall)},
            {"precision", opt_json(s.precision)}, {"f1", opt_json(s.f1)}};
}

EdgeScores scores_from(const json& v, bool strict, const std::string& context) {
    expect_object(v, {"mtp", "mfp", "mfn", "recall", "precision", "f1"}, {}, strict, context);
    EdgeScores s;
    s.mtp = as_double(v["mtp"], context);
    s.mfp = as_double(v["mfp"], context);
    s.mfn = as_double(v["mfn"], context);
    s.recall = as_opt_double(v["recall"], context);
    s.precision = as_opt_double(v["precision"], context);
    s.f1 = as_opt_double(v["f1"], context);
    return s;
}

json solutions_json(const std::vector<Solution>& solutions) {
    json out = json::array();
    for (const Solution& s : solutions) out.push_back({{"cost", s.cost}, {"edges", solution_edges(s.dag)}});
    return out;
}

std::vector<Solution> solutions_from(const json& v, std::size_t order, bool strict) {
    require(v.is_array(), "solutions: expected an array");
    std::vector<Solution> out;
    for (const json& s : v) {
        expect_object(s, {"cost", "edges"}, {}, strict, "solution");
        std::vector<Edge> edges = edges_from(s["edges"], order, "solution edges");
        try {
            out.push_back({Dag(DirectedGraph(order, edges)), as_size(s["cost"], "solution cost")});
        } catch (const InvalidInput& e) {
            throw ValidationError(std::string("solution: ") + e.what());
        } catch (const CyclicGraph&) {
            throw ValidationError("solution: edge list is cyclic");
        }
    }
    return out;
}

StopReason stop_from(const std::string& s) {
    for (StopReason r : {StopReason::Exhausted, StopReason::BudgetExceeded, StopReason::StateLimit,
                         StopReason::TimeLimit}) {
        if (to_string(r) == s) return r;
    }
    throw ValidationError("unknown stop_reason '" + s + "'");
}

} // namespace

std::string_view to_string(DocumentKind kind) {
    switch (kind) {
    case DocumentKind::Instance: return "instance";
    case DocumentKind::CamuvInput: return "camuv-input";
    case DocumentKind::EnumerationResult: return "enumeration-result";
    case DocumentKind::Metrics: return "metrics";
    case DocumentKind::Constraints: return "constraints";
    case DocumentKind::OracleResult: return "oracle-result";
    }
    return "instance";
}

DocumentKind parse_kind(std::string_view name) {
    for (DocumentKind k : {DocumentKind::Instance, DocumentKind::CamuvInput, DocumentKind::EnumerationResult,
                           DocumentKind::Metrics, DocumentKind::Constraints, DocumentKind::OracleResult}) {
        if (to_string(k) == name) return k;
    }
    throw ValidationError("unknown document kind '" + std::string(name) + "'");
}

bool MetricsDocument::operator==(const MetricsDocument& o) const {
    return table == o.table && report == o.report && e_uno == o.e_uno && observed == o.observed;
}

json solution_edges(const Dag& dag) { return edges_json(dag.edges()); }

json instance_to_json(const GroundTruthInstance& inst) {
    json views = json::array();
    for (NodeSet v : inst.views) views.push_back(nodes_json(v));
    return {{"variables", VariableTable::numbered(inst.truth.order()).names()},
            {"truth", edges_json(inst.truth.edges())},
            {"views", views},
            {"seed", inst.seed},
            {"params", {{"d", inst.params.d}, {"p", inst.params.p}, {"m", inst.params.m}, {"u", inst.params.u}}}};
}

GroundTruthInstance instance_from_json(const json& payload, bool strict) {
    expect_object(payload, {"variables", "truth", "views", "seed", "params"}, {}, strict, "instance");
    const VariableTable table = table_from(payload["variables"]);
    const std::size_t n = table.size();
    const json& params = payload["params"];
    expect_object(params, {"d", "p", "m", "u"}, {}, strict, "instance params");

    GroundTruthInstance inst;
    inst.params = {as_size(params["d"], "d"), as_double(params["p"], "p"), as_size(params["m"], "m"),
                   as_size(params["u"], "u")};
    inst.seed = as_u64(payload["seed"], "seed");
    try {
        inst.truth = Dag(DirectedGraph(n, edges_from(payload["truth"], n, "truth")));
    } catch (const CyclicGraph&) {
        throw ValidationError("instance: truth is cyclic");
    }
    require(payload["views"].is_array(), "instance: views must be an array");
    for (const json& v : payload["views"]) inst.views.push_back(nodes_from(v, n, "view"));
    try {
        inst.validate();
    } catch (const InvalidInput& e) {
        throw ValidationError(e.what());
    }
    return inst;
}

json input_to_json(const IntegrationInput& input) {
    json datasets = json::array();
    for (const MixedGraph& g : input.results) {
        datasets.push_back({{"observed", nodes_json(g.observed)},
                            {"directed", edges_json(g.directed)},
                            {"unidentified", pairs_json(g.unidentified)}});
    }
    return {{"variables", input.table.names()}, {"datasets", datasets}};
}

IntegrationInput input_from_json(const json& payload, bool strict) {
    expect_object(payload, {"variables", "datasets"}, {}, strict, "camuv-input");
    IntegrationInput input{table_from(payload["variables"]), {}};
    const std::size_t n = input.table.size();
    require(payload["datasets"].is_array(), "camuv-input: datasets must be an array");
    for (const json& d : payload["datasets"]) {
        expect_object(d, {"observed", "directed", "unidentified"}, {}, strict, "dataset");
        try {
            input.results.push_back(MixedGraph::make(n, nodes_from(d["observed"], n, "observed"),
                                                     edges_from(d["directed"], n, "directed"),
                                                     pairs_from(d["unidentified"], n, "unidentified")));
        } catch (const InvalidInput& e) {
            throw ValidationError(std::string("dataset: ") + e.what());
        }
    }
    try {
        input.validate();
    } catch (const InvalidInput& e) {
        throw ValidationError(e.what());
    }
    return input;
}

json result_to_json(const EnumerationResult& r) {
    return {{"variables", r.table.names()},
            {"budget", r.budget},
            {"c_star", r.c_star ? json(*r.c_star) : json(nullptr)},
            {"complete", r.complete()},
            {"stop_reason", to_string(r.stop)},
            {"order_policy", to_string(r.order)},
            {"open_pairs", pairs_json(r.open_pairs)},
            {"stats",
             {{"popped", r.stats.popped},
              {"pushed", r.stats.pushed},
              {"monotonicity_violations", r.stats.monotonicity_violations}}},
            {"solution_count", r.solutions.size()},
            {"solutions", solutions_json(r.solutions)}};
}

EnumerationResult result_from_json(const json& payload, bool strict) {
    expect_object(payload,
                  {"variables", "budget", "c_star", "complete", "stop_reason", "order_policy", "open_pairs",
                   "stats", "solution_count", "solutions"},
                  {}, strict, "enumeration-result");
    EnumerationResult r;
    r.table = table_from(payload["variables"]);
    const std::size_t n = r.table.size();
    r.budget = as_size(payload["budget"], "budget");
    if (!payload["c_star"].is_null()) r.c_star = as_size(payload["c_star"], "c_star");
    require(payload["stop_reason"].is_string(), "stop_reason must be a string");
    r.stop = stop_from(payload["stop_reason"].get<std::string>());
    require(payload["order_policy"].is_string(), "order_policy must be a string");
    try {
        r.order = parse_edge_order(payload["order_policy"].get<std::string>());
    } catch (const InvalidInput& e) {
        throw ValidationError(e.what());
    }
    r.open_pairs = pairs_from(payload["open_pairs"], n, "open_pairs");
    const json& stats = payload["stats"];
    expect_object(stats, {"popped", "pushed", "monotonicity_violations"}, {}, strict, "stats");
    r.stats.popped = as_size(stats["popped"], "popped");
    r.stats.pushed = as_size(stats["pushed"], "pushed");
    r.stats.monotonicity_violations = as_size(stats["monotonicity_violations"], "monotonicity_violations");
    r.solutions = solutions_from(payload["solutions"], n, strict);
    require(as_size(payload["solution_count"], "solution_count") == r.solutions.size(),
            "solution_count does not match the solution list");
    require(payload["complete"].is_boolean() && payload["complete"].get<bool>() == r.complete(),
            "complete flag does not match stop_reason");
    return r;
}

json metrics_to_json(const MetricsDocument& doc) {
    json out = {{"variables", doc.table.names()},
                {"solution_count", doc.report.solution_count},
                {"frequencies", doc.report.frequencies},
                {"overall", scores_json(doc.report.overall)}};
    if (doc.e_uno) out["e_uno"] = scores_json(*doc.e_uno);
    if (doc.observed) out["observed_pairs"] = scores_json(*doc.observed);
    return out;
}

MetricsDocument metrics_from_json(const json& payload, bool strict) {
    expect_object(payload, {"variables", "solution_count", "frequencies", "overall"}, {"e_uno", "observed_pairs"},
                  strict, "metrics");
    MetricsDocument doc;
    doc.table = table_from(payload["variables"]);
    doc.report.solution_count = as_size(payload["solution_count"], "solution_count");
    const json& freq = payload["frequencies"];
    require(freq.is_array() && freq.size() == doc.table.size(), "frequencies: expected a d x d matrix");
    for (const json& row : freq) {
        require(row.is_array() && row.size() == doc.table.size(), "frequencies: expected a d x d matrix");
        std::vector<double> values;
        for (const json& x : row) values.push_back(as_double(x, "frequency"));
        doc.report.frequencies.push_back(std::move(values));
    }
    doc.report.overall = scores_from(payload["overall"], strict, "overall");
    if (payload.contains("e_uno")) doc.e_uno = scores_from(payload["e_uno"], strict, "e_uno");
    if (payload.contains("observed_pairs")) {
        doc.observed = scores_from(payload["observed_pairs"], strict, "observed_pairs");
    }
    return doc;
}

json constraints_to_json(const ConstraintSet& c) {
    const ConstraintSet n = c.normalized();
    return {{"sinks", n.sinks},
            {"required_edges", edges_json(n.required_edges)},
            {"forbidden_edges", edges_json(n.forbidden_edges)},
            {"required_absent_pairs", pairs_json(n.required_absent_pairs)}};
}

ConstraintSet constraints_from_json(const json& payload, const VariableTable& table, bool strict) {
    expect_object(payload, {}, {"sinks", "required_edges", "forbidden_edges", "required_absent_pairs"}, strict,
                  "constraints");
    auto resolve = [&](const json& v) { return id_or_name(v, table, "constraints"); };
    auto edge_list = [&](const char* key) {
        std::vector<Edge> out;
        if (!payload.contains(key)) return out;
        require(payload[key].is_array(), std::string("constraints: ") + key + " must be an array");
        for (const json& e : payload[key]) {
            auto [a, b] = pair_from(e, resolve, std::string("constraints ") + key);
            require(a != b, std::string("constraints ") + key + ": self-loop");
            out.push_back({a, b});
        }
        return out;
    };

    ConstraintSet c;
    if (payload.contains("sinks")) {
        require(payload["sinks"].is_array(), "constraints: sinks must be an array");
        for (const json& s : payload["sinks"]) c.sinks.push_back(resolve(s));
    }
    c.required_edges = edge_list("required_edges");
    c.forbidden_edges = edge_list("forbidden_edges");
    for (const Edge& e : edge_list("required_absent_pairs")) c.required_absent_pairs.emplace_back(e.from, e.to);
    return c.normalized();
}

json oracle_to_json(const OracleDocument& doc) {
    const auto& r = doc.result;
    json histogram = json::object();
    for (const auto& [cost, count] : r.cost_histogram) histogram[std::to_string(cost)] = count;
    return {{"variables", doc.table.names()},
            {"assignments_examined", r.assignments_examined},
            {"dag_count", r.dag_count},
            {"cost_histogram", histogram},
            {"c_star", r.c_star ? json(*r.c_star) : json(nullptr)},
            {"budget", r.budget},
            {"open_pairs", pairs_json(r.open_pairs)},
            {"solution_count", r.solutions.size()},
            {"solutions", solutions_json(r.solutions)}};
}

OracleDocument oracle_from_json(const json& payload, bool strict) {
    expect_object(payload,
                  {"variables", "assignments_examined", "dag_count", "cost_histogram", "c_star", "budget",
                   "open_pairs", "solution_count", "solutions"},
                  {}, strict, "oracle-result");
    OracleDocument doc;
    doc.table = table_from(payload["variables"]);
    const std::size_t n = doc.table.size();
    auto& r = doc.result;
    r.assignments_examined = as_u64(payload["assignments_examined"], "assignments_examined");
    r.dag_count = as_u64(payload["dag_count"], "dag_count");
    require(payload["cost_histogram"].is_object(), "cost_histogram must be an object");
    for (const auto& [key, value] : payload["cost_histogram"].items()) {
        std::size_t cost = 0;
        try {
            cost = std::stoul(key);
        } catch (const std::exception&) {
            throw ValidationError("cost_histogram keys must be integers");
        }
        r.cost_histogram[cost] = as_u64(value, "cost_histogram");
    }
    if (!payload["c_star"].is_null()) r.c_star = as_size(payload["c_star"], "c_star");
    r.budget = as_size(payload["budget"], "budget");
    r.open_pairs = pairs_from(payload["open_pairs"], n, "open_pairs");
    r.solutions = solutions_from(payload["solutions"], n, strict);
    require(as_size(payload["solution_count"], "solution_count") == r.solutions.size(),
            "solution_count does not match the solution list");
    return doc;
}

json wrap(DocumentKind kind, json payload) {
    return {{"format_version", kFormatVersion}, {"kind", to_string(kind)}, {"payload", std::move(payload)}};
}

json unwrap(const json& document, DocumentKind expected, bool strict) {
    expect_object(document, {"format_version", "kind", "payload"}, {}, strict, "document");
    require(document["format_version"].is_string() &&
                document["format_version"].get<std::string>() == kFormatVersion,
            "unsupported format_version (expected " + std::string(kFormatVersion) + ")");
    require(document["kind"].is_string(), "document kind must be a string");
    DocumentKind kind = parse_kind(document["kind"].get<std::string>());
    require(kind == expected, "expected a " + std::string(to_string(expected)) + " document, got " +
                                  std::string(to_string(kind)));
    return document["payload"];
}

std::string canonical(const json& document) { return document.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

json read_document(const std::filesystem::path& path, DocumentKind expected, bool strict) {
    return unwrap(read_json_file(path), expected, strict);
}

void write_document(const std::filesystem::path& path, DocumentKind kind, json payload) {
    write_text_file(path, canonical(wrap(kind, std::move(payload))));
}

} // namespace icamuv::io

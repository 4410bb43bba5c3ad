#include "icamuv/service.hpp"

#include "httplib.h"

#include <charconv>

namespace icamuv::service {
namespace {

Response error(int status, const std::string& message) {
    return {status, {{"error", message}}};
}

void send(httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(io::canonical(r.body), "application/json");
}

} // namespace

ExplorerService::ExplorerService(EnumerationResult result, bool strict)
    : result_(std::move(result)), strict_(strict) {}

Response ExplorerService::meta() const {
    return {200,
            {{"variables", result_.table.names()},
             {"solution_count", result_.solutions.size()},
             {"c_star", result_.c_star ? io::json(*result_.c_star) : io::json(nullptr)},
             {"budget", result_.budget},
             {"complete", result_.complete()}}};
}

Response ExplorerService::filter(const std::string& body) const {
    io::json request;
    try {
        request = body.empty() ? io::json::object() : io::json::parse(body);
    } catch (const io::json::parse_error& e) {
        return error(400, std::string("malformed JSON: ") + e.what());
    }
    if (!request.is_object()) return error(400, "request body must be a JSON object");

    std::size_t sample_count = kDefaultSamples;
    std::uint64_t seed = 0;
    io::json constraint_part = request;
    try {
        if (request.contains("sample_count")) {
            if (!request["sample_count"].is_number_unsigned()) return error(400, "sample_count must be >= 0");
            sample_count = request["sample_count"].get<std::size_t>();
            constraint_part.erase("sample_count");
        }
        if (request.contains("seed")) {
            if (!request["seed"].is_number_unsigned()) return error(400, "seed must be >= 0");
            seed = request["seed"].get<std::uint64_t>();
            constraint_part.erase("seed");
        }
        ConstraintSet constraints = io::constraints_from_json(constraint_part, result_.table, strict_);
        EnumerationResult kept = filter_solutions(result_, constraints);

        io::json samples = io::json::array();
        for (std::size_t i : sample_indices(kept.solutions.size(), sample_count, seed)) {
            samples.push_back({{"cost", kept.solutions[i].cost}, {"edges", io::solution_edges(kept.solutions[i].dag)}});
        }
        io::json frequencies = kept.solutions.empty() ? io::json(nullptr) : io::json(edge_frequency(kept));
        return {200,
                {{"count", kept.solutions.size()},
                 {"frequencies", frequencies},
                 {"samples", samples},
                 {"seed", seed},
                 {"constraints", io::constraints_to_json(constraints)}}};
    } catch (const ContradictoryConstraints& e) {
        return error(409, e.what());
    } catch (const Error& e) {
        return error(400, e.what());
    }
}

Response ExplorerService::solution(const std::string& index) const {
    std::size_t i = 0;
    auto [end, ec] = std::from_chars(index.data(), index.data() + index.size(), i);
    if (ec != std::errc() || end != index.data() + index.size()) return error(400, "index must be an integer");
    if (i >= result_.solutions.size()) return error(404, "no solution at index " + index);
    const Solution& s = result_.solutions[i];
    return {200, {{"index", i}, {"cost", s.cost}, {"edges", io::solution_edges(s.dag)}}};
}

void ExplorerService::install(httplib::Server& server) const {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server.Get("/api/meta", [this](const httplib::Request&, httplib::Response& res) { send(res, meta()); });
    server.Post("/api/filter",
                [this](const httplib::Request& req, httplib::Response& res) { send(res, filter(req.body)); });
    server.Get(R"(/api/solution/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        send(res, solution(req.matches[1]));
    });
}

bool serve(const ExplorerService& service, const std::string& host, int port) {
    httplib::Server server;
    service.install(server);
    return server.listen(host, port);
}

} // namespace icamuv::service

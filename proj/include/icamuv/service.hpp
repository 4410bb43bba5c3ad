#pragma once

#include "icamuv/constraints.hpp"
#include "icamuv/io.hpp"

#include <string>

namespace httplib {
class Server;
}

namespace icamuv::service {

struct Response {
    int status = 200;
    io::json body;
};

/// Read-only HTTP surface over one loaded enumeration result.
///
///   GET  /api/meta             variable names, solution count, c_star, budget
///   POST /api/filter           constraint set -> count, frequencies, samples
///   GET  /api/solution/{index} one DAG
///
/// Handlers are const and keep no per-request state.
class ExplorerService {
public:
    static constexpr std::size_t kDefaultSamples = 3;

    explicit ExplorerService(EnumerationResult result, bool strict = true);

    const EnumerationResult& result() const { return result_; }

    Response meta() const;
    /// Body: constraint fields plus optional "sample_count" and "seed".
    Response filter(const std::string& body) const;
    Response solution(const std::string& index) const;

    /// Installs the routes and permissive CORS headers on `server`.
    void install(httplib::Server& server) const;

private:
    EnumerationResult result_;
    bool strict_;
};

/// Blocks serving on host:port until the server is stopped.
bool serve(const ExplorerService& service, const std::string& host, int port);

} // namespace icamuv::service

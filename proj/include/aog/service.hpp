#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "json.hpp"

#include "aog/error.hpp"

namespace aog {

/// Error carrying the HTTP status the game API answers with.
class ApiError : public Error {
public:
    ApiError(int status, const std::string& what, nlohmann::json extra = nullptr)
        : Error(what), status_(status), extra_(std::move(extra)) {}
    int status() const { return status_; }
    const nlohmann::json& extra() const { return extra_; }

private:
    int status_;
    nlohmann::json extra_;
};

struct ServiceOptions {
    /// Directory for one JSON file per session; sessions found there are
    /// resumed on construction.
    std::optional<std::filesystem::path> persist_dir;
    /// When a session is already handling a request: wait for it (default)
    /// or fail with 429.
    bool reject_when_busy = false;
    std::uint64_t seed = 0;  ///< session id stream
};

/// Interactive sessions: a human plays one side, an engine strategy the
/// other. All methods take and return JSON documents and throw ApiError.
class GameService {
public:
    explicit GameService(ServiceOptions options = {});
    ~GameService();

    /// {graph: edge-list text | {kind, n, parts, p, seed}, role: "algy" |
    /// "strategist", opponent: descriptor} -> {id, view}
    nlohmann::ordered_json create_session(const nlohmann::json& body);
    nlohmann::ordered_json view(const std::string& id);
    /// {edge:[u,v]} -> {dir, newly_forced, view}
    nlohmann::ordered_json query(const std::string& id, const nlohmann::json& body);
    /// {dir:[x,y]} -> {next_query, view}
    nlohmann::ordered_json answer(const std::string& id, const nlohmann::json& body);
    nlohmann::ordered_json hint(const std::string& id);
    nlohmann::ordered_json transcript(const std::string& id);

    std::size_t session_count() const;

    struct Session;

private:
    std::shared_ptr<Session> find(const std::string& id) const;
    void persist(const Session& s) const;
    void load_persisted();

    ServiceOptions options_;
    mutable std::shared_mutex mu_;
    std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t counter_ = 0;
};

}  // namespace aog

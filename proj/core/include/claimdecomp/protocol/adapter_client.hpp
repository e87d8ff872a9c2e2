#pragma once

#include <chrono>
#include <string>
#include <string_view>

#include "claimdecomp/protocol/subprocess.hpp"

namespace claimdecomp {

/// Handshake metadata. `bounded` promises entailment scores in [0, 1].
struct AdapterInfo {
    std::string name;
    std::string version;
    bool bounded = false;
};

struct ConvertReply {
    std::string statement;
    std::string negation;
};

/// Client side of the line-delimited JSON protocol spoken by scorer and
/// converter adapters over their stdin/stdout:
///
///   {"op":"hello"}                               -> {"name","version","bounded"}
///   {"op":"entail","premise":P,"hypothesis":H}   -> {"score": real}
///   {"op":"convert","question":Q}                -> {"statement","negation"}
///
/// A reply carrying an "error" key is a failed request. One request is in
/// flight at a time; open several clients for parallelism.
class AdapterClient {
  public:
    static constexpr std::chrono::milliseconds kDefaultTimeout{30000};

    /// Starts `command` and performs the handshake. Throws ProtocolError if the
    /// process dies or answers badly, TimeoutError if it stays silent.
    explicit AdapterClient(const std::string& command,
                           std::chrono::milliseconds timeout = kDefaultTimeout);

    const AdapterInfo& info() const noexcept { return m_info; }
    const std::string& command() const noexcept { return m_process.command(); }

    double entail(std::string_view premise, std::string_view hypothesis);
    ConvertReply convert(std::string_view question);

  private:
    std::string request(const std::string& payload, std::string_view op);

    Subprocess m_process;
    std::chrono::milliseconds m_timeout;
    AdapterInfo m_info;
};

}  // namespace claimdecomp

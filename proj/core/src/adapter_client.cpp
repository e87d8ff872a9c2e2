#include "claimdecomp/protocol/adapter_client.hpp"

#include <cmath>

#include <json.hpp>

#include "claimdecomp/error.hpp"

namespace claimdecomp {

namespace {

using json = nlohmann::json;

json decode_reply(const std::string& line, std::string_view op, const std::string& command) {
    json reply;
    try {
        reply = json::parse(line);
    } catch (const json::parse_error&) {
        throw ProtocolError("'" + command + "' sent a non-JSON reply to " + std::string(op) +
                            ": " + line.substr(0, 120));
    }
    if (!reply.is_object())
        throw ProtocolError("'" + command + "' reply to " + std::string(op) + " is not an object");
    if (auto it = reply.find("error"); it != reply.end() && !it->is_null())
        throw ProtocolError("'" + command + "' rejected " + std::string(op) + ": " +
                            (it->is_string() ? it->get<std::string>() : it->dump()));
    return reply;
}

std::string required_text(const json& reply, const char* key, std::string_view op) {
    auto it = reply.find(key);
    if (it == reply.end() || !it->is_string() || it->get<std::string>().empty())
        throw ProtocolError(std::string(op) + " reply is missing a nonempty \"" + key + "\"");
    return it->get<std::string>();
}

}  // namespace

AdapterClient::AdapterClient(const std::string& command, std::chrono::milliseconds timeout)
    : m_process(command), m_timeout(timeout) {
    const json reply = decode_reply(request(R"({"op":"hello"})", "hello"), "hello", command);
    m_info.name = required_text(reply, "name", "hello");
    if (auto it = reply.find("version"); it != reply.end())
        m_info.version = it->is_string() ? it->get<std::string>() : it->dump();
    auto b = reply.find("bounded");
    if (b == reply.end() || !b->is_boolean())
        throw ProtocolError("hello reply is missing boolean \"bounded\"");
    m_info.bounded = b->get<bool>();
}

std::string AdapterClient::request(const std::string& payload, std::string_view op) {
    m_process.write_line(payload);
    auto line = m_process.read_line(m_timeout);
    if (!line)
        throw ProtocolError("'" + m_process.command() + "' exited without answering " +
                            std::string(op));
    return *line;
}

double AdapterClient::entail(std::string_view premise, std::string_view hypothesis) {
    const json req = {{"op", "entail"},
                      {"premise", std::string(premise)},
                      {"hypothesis", std::string(hypothesis)}};
    const json reply = decode_reply(
        request(req.dump(-1, ' ', false, json::error_handler_t::replace), "entail"), "entail",
        m_process.command());
    auto it = reply.find("score");
    if (it == reply.end() || !it->is_number())
        throw ProtocolError("entail reply is missing numeric \"score\"");
    const double score = it->get<double>();
    if (!std::isfinite(score)) throw ProtocolError("entail reply score is not finite");
    if (m_info.bounded && (score < 0.0 || score > 1.0))
        throw ProtocolError("bounded adapter returned score " + std::to_string(score) +
                            " outside [0, 1]");
    return score;
}

ConvertReply AdapterClient::convert(std::string_view question) {
    const json req = {{"op", "convert"}, {"question", std::string(question)}};
    const json reply = decode_reply(
        request(req.dump(-1, ' ', false, json::error_handler_t::replace), "convert"), "convert",
        m_process.command());
    return {required_text(reply, "statement", "convert"),
            required_text(reply, "negation", "convert")};
}

}  // namespace claimdecomp

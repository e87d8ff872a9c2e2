// Scripted adapter for protocol tests. Speaks the line-delimited JSON
// protocol on stdin/stdout; flags select deterministic faults.
//
//   --score=overlap|CONST   entail reply (overlap: share of hypothesis words
//                           found in the premise)
//   --unbounded             declare bounded=false in the handshake
//   --no-bounded            omit "bounded" from the handshake
//   --exit-before-hello     exit without answering anything
//   --exit-after=N          exit after answering N requests (hello included)
//   --hang-on=OP            never answer requests with this op
//   --error-on=OP           answer requests with this op with an error object
//   --garbage-on=OP         answer requests with this op with non-JSON text
//   --question-statement    convert replies end with '?'
//   --omit-negation         convert replies lack "negation"
//   --log=FILE              append each request line to FILE

#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include <json.hpp>

using json = nlohmann::json;

namespace {

std::set<std::string> words(const std::string& s) {
    std::set<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) {
        std::string clean;
        for (char c : w)
            if (std::isalnum(static_cast<unsigned char>(c)))
                clean.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (!clean.empty()) out.insert(clean);
    }
    return out;
}

double overlap(const std::string& premise, const std::string& hypothesis) {
    const auto p = words(premise);
    const auto h = words(hypothesis);
    if (h.empty()) return 0.0;
    std::size_t hit = 0;
    for (const auto& w : h) hit += p.count(w);
    return static_cast<double>(hit) / static_cast<double>(h.size());
}

std::string value_of(const std::string& arg, const std::string& flag) {
    return arg.rfind(flag + "=", 0) == 0 ? arg.substr(flag.size() + 1) : std::string();
}

}  // namespace

int main(int argc, char** argv) {
    std::string score = "overlap";
    bool bounded = true, omit_bounded = false, question_statement = false, omit_negation = false;
    long exit_after = -1;
    std::string hang_on, error_on, garbage_on, log_path;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--unbounded") bounded = false;
        else if (a == "--no-bounded") omit_bounded = true;
        else if (a == "--exit-before-hello") return 3;
        else if (a == "--question-statement") question_statement = true;
        else if (a == "--omit-negation") omit_negation = true;
        else if (auto v = value_of(a, "--score"); !v.empty()) score = v;
        else if (auto v = value_of(a, "--exit-after"); !v.empty()) exit_after = std::stol(v);
        else if (auto v = value_of(a, "--hang-on"); !v.empty()) hang_on = v;
        else if (auto v = value_of(a, "--error-on"); !v.empty()) error_on = v;
        else if (auto v = value_of(a, "--garbage-on"); !v.empty()) garbage_on = v;
        else if (auto v = value_of(a, "--log"); !v.empty()) log_path = v;
        else {
            std::cerr << "mock_adapter: unknown flag " << a << '\n';
            return 2;
        }
    }

    long answered = 0;
    std::string line;
    while (std::getline(std::cin, line)) {
        if (!log_path.empty()) std::ofstream(log_path, std::ios::app) << line << '\n';
        json req = json::parse(line, nullptr, false);
        const std::string op = req.is_object() ? req.value("op", "") : "";
        if (!hang_on.empty() && op == hang_on) {
            std::this_thread::sleep_for(std::chrono::hours(1));
        }
        json reply;
        if (!garbage_on.empty() && op == garbage_on) {
            std::cout << "this is not json" << std::endl;
            continue;
        }
        if (!req.is_object() || op.empty()) {
            reply = {{"error", "malformed request"}};
        } else if (!error_on.empty() && op == error_on) {
            reply = {{"error", "scripted failure on " + op}};
        } else if (op == "hello") {
            reply = {{"name", "mock-adapter"}, {"version", "1"}};
            if (!omit_bounded) reply["bounded"] = bounded;
        } else if (op == "entail") {
            const std::string premise = req.value("premise", "");
            const std::string hypothesis = req.value("hypothesis", "");
            reply = {{"score", score == "overlap" ? overlap(premise, hypothesis) : std::stod(score)}};
        } else if (op == "convert") {
            std::string q = req.value("question", "");
            while (!q.empty() && (q.back() == '?' || q.back() == ' ')) q.pop_back();
            const std::string end = question_statement ? "?" : ".";
            reply = {{"statement", "It holds that " + q + end}, {"negation", "It does not hold that " + q + end}};
            if (omit_negation) reply.erase("negation");
        } else {
            reply = {{"error", "unknown op " + op}};
        }
        std::cout << reply.dump() << std::endl;
        if (exit_after >= 0 && ++answered >= exit_after) return 0;
    }
    return 0;
}

#include "claimdecomp_cli/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "claimdecomp/error.hpp"
#include "common.hpp"

namespace claimdecomp::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Claim decomposition evaluation toolkit", "claimdecomp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "claimdecomp 0.3.0");

    std::vector<std::pair<std::string, std::unique_ptr<Command>>> commands;
    commands.emplace_back("stats", make_stats(app));
    commands.emplace_back("aggregate", make_aggregate(app));
    commands.emplace_back("retrieve", make_retrieve(app));
    commands.emplace_back("eval-decomp", make_eval_decomp(app));
    commands.emplace_back("agreement", make_agreement(app));
    commands.emplace_back("convert", make_convert(app));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        const int code = app.exit(e, out, msg);
        if (code == 0) return 0;
        std::string text = msg.str();
        text = text.substr(0, text.find('\n'));
        err << "error: " << text << " (see --help)\n";
        return 2;
    }

    Command* chosen = nullptr;
    for (auto& [name, cmd] : commands)
        if (app.got_subcommand(name)) chosen = cmd.get();

    try {
        const auto format = parse_output_format(chosen->output().report);
        const Report report = chosen->execute(err);
        std::ostringstream buffer;
        render(report, format, buffer);
        out << buffer.str();
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ProtocolError& e) {
        err << "error: adapter: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: unexpected failure: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace claimdecomp::cli

#include <chrono>
#include <cstdlib>
#include <ostream>

#include "claimdecomp/codec/statements.hpp"
#include "claimdecomp/error.hpp"
#include "claimdecomp/protocol/adapter_client.hpp"
#include "common.hpp"

namespace claimdecomp::cli {

namespace {

class ConvertCommand final : public Command {
  public:
    explicit ConvertCommand(CLI::App& parent) {
        auto* app = parent.add_subcommand("convert", "Turn yes-no questions into a statement and its negation");
        add_dataset_options(*app, m_data, false);
        add_output_options(*app, m_out, false);
        app->add_option("--question,-q", m_questions, "Question to convert (repeatable)");
        app->add_option("--converter", m_converter, "rule, external[:CMD] or auto (rule, then adapter)")
            ->capture_default_str();
        app->add_option("--timeout-ms", m_timeout_ms, "Adapter reply timeout")->capture_default_str();
    }

    const OutputOptions& output() const override { return m_out; }

    Report execute(std::ostream& err) override {
        const bool external = m_converter.rfind("external", 0) == 0;
        if (!external && m_converter != "rule" && m_converter != "auto")
            throw UsageError("unknown converter '" + m_converter + "'");
        std::vector<std::pair<std::string, std::string>> items;  // (source, question)
        for (const auto& q : m_questions) items.emplace_back("arg", q);
        if (!m_data.dataset.empty())
            for (const auto& r : load_records(m_data, err))
                for (std::size_t i = 0; i < r.flat_subquestion_count(); ++i)
                    items.emplace_back(r.id + "#" + std::to_string(i), r.flat_subquestion(i)->text);
        if (items.empty()) throw UsageError("nothing to convert: give --question or --dataset");

        std::unique_ptr<AdapterClient> client;
        const auto timeout = std::chrono::milliseconds(m_timeout_ms);
        const bool fallback = m_converter == "auto" && std::getenv(kAdapterEnv);
        Table t("statements", {"source", "question", "statement", "negation", "provenance"});
        for (const auto& [source, question] : items) {
            std::optional<StatementPair> pair;
            if (!external) {
                try {
                    pair = question_to_statements(question);
                } catch (const Unconvertible&) {
                }
            }
            if (!pair && (external || fallback)) {
                if (!client) client = std::make_unique<AdapterClient>(adapter_command(m_converter), timeout);
                pair = convert_via_external(question, *client);
            }
            if (pair)
                t.add({source, question, pair->affirmative, pair->negated, std::string(to_string(pair->provenance))});
            else
                t.add({source, question, Cell{}, Cell{}, std::string("unconvertible")});
        }
        return {"convert", {std::move(t)}};
    }

  private:
    DatasetOptions m_data;
    OutputOptions m_out;
    std::vector<std::string> m_questions;
    std::string m_converter = "rule";
    long m_timeout_ms = 30000;
};

}  // namespace

std::unique_ptr<Command> make_convert(CLI::App& parent) { return std::make_unique<ConvertCommand>(parent); }

}  // namespace claimdecomp::cli

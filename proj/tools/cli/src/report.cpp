#include "report.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "common.hpp"

namespace claimdecomp::cli {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string text_of(const Cell& c, int decimals) {
    return std::visit(overloaded{
                          [](std::monostate) { return std::string("NA"); },
                          [](const std::string& s) { return s; },
                          [](std::int64_t i) { return std::to_string(i); },
                          [&](double d) { return fmt::format("{:.{}f}", d, decimals); },
                          [](bool b) { return std::string(b ? "true" : "false"); },
                      },
                      c);
}

nlohmann::ordered_json json_of(const Cell& c) {
    return std::visit(overloaded{
                          [](std::monostate) { return nlohmann::ordered_json(nullptr); },
                          [](const std::string& s) { return nlohmann::ordered_json(s); },
                          [](std::int64_t i) { return nlohmann::ordered_json(i); },
                          [](double d) { return nlohmann::ordered_json(d); },
                          [](bool b) { return nlohmann::ordered_json(b); },
                      },
                      c);
}

// Tabs and newlines inside a TSV field would break the row structure.
std::string tsv_escape(std::string s) {
    std::replace(s.begin(), s.end(), '\t', ' ');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

void render_tsv(const Report& report, std::ostream& out) {
    bool first = true;
    for (const auto& t : report.tables) {
        if (!first) out << '\n';
        first = false;
        out << "# " << t.name << '\n';
        for (std::size_t j = 0; j < t.columns.size(); ++j) out << (j ? "\t" : "") << t.columns[j];
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "\t" : "") << tsv_escape(text_of(row[j], 6));
            out << '\n';
        }
    }
}

void render_json(const Report& report, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["command"] = report.command;
    doc["tables"] = nlohmann::ordered_json::array();
    for (const auto& t : report.tables) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["columns"] = t.columns;
        jt["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json jr = nlohmann::ordered_json::object();
            for (std::size_t j = 0; j < row.size(); ++j) jr[t.columns[j]] = json_of(row[j]);
            jt["rows"].push_back(std::move(jr));
        }
        doc["tables"].push_back(std::move(jt));
    }
    out << doc.dump(2) << '\n';
}

void render_pretty(const Report& report, std::ostream& out) {
    bool first = true;
    for (const auto& t : report.tables) {
        if (!first) out << '\n';
        first = false;
        std::vector<std::vector<std::string>> text;
        std::vector<std::size_t> width(t.columns.size());
        for (std::size_t j = 0; j < t.columns.size(); ++j) width[j] = t.columns[j].size();
        for (const auto& row : t.rows) {
            auto& line = text.emplace_back();
            for (std::size_t j = 0; j < row.size(); ++j) {
                line.push_back(tsv_escape(text_of(row[j], 4)));
                width[j] = std::max(width[j], line.back().size());
            }
        }
        out << t.name << '\n';
        const auto emit = [&](const std::vector<std::string>& cells) {
            std::string line;
            for (std::size_t j = 0; j < cells.size(); ++j) {
                if (j) line += "  ";
                line += fmt::format("{:<{}}", cells[j], width[j]);
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << '\n';
        };
        emit(t.columns);
        std::size_t rule = 0;
        for (std::size_t j = 0; j < width.size(); ++j) rule += width[j] + (j ? 2 : 0);
        out << std::string(rule, '-') << '\n';
        for (const auto& line : text) emit(line);
    }
}

}  // namespace

OutputFormat parse_output_format(std::string_view s) {
    if (s == "tsv") return OutputFormat::Tsv;
    if (s == "json") return OutputFormat::Json;
    if (s == "pretty") return OutputFormat::Pretty;
    throw UsageError("unknown report format '" + std::string(s) + "'");
}

Cell cell(std::optional<double> v) {
    if (!v) return std::monostate{};
    return *v;
}

Cell cell(std::size_t v) { return static_cast<std::int64_t>(v); }

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw Error("internal: table '" + name + "' row has " + std::to_string(row.size()) +
                    " cells for " + std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

void render(const Report& report, OutputFormat format, std::ostream& out) {
    switch (format) {
    case OutputFormat::Tsv: render_tsv(report, out); break;
    case OutputFormat::Json: render_json(report, out); break;
    case OutputFormat::Pretty: render_pretty(report, out); break;
    }
}

}  // namespace claimdecomp::cli

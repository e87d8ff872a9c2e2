#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace claimdecomp::cli {

enum class OutputFormat : std::uint8_t { Tsv, Json, Pretty };

OutputFormat parse_output_format(std::string_view s);

/// Missing values (undefined kappa, empty recall subgroup) are monostate.
using Cell = std::variant<std::monostate, std::string, std::int64_t, double, bool>;

Cell cell(std::optional<double> v);
Cell cell(std::size_t v);

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    Table(std::string n, std::vector<std::string> cols) : name(std::move(n)), columns(std::move(cols)) {}
    void add(std::vector<Cell> row);
};

struct Report {
    std::string command;
    std::vector<Table> tables;
};

/// tsv: "# <table>" line, header, rows; tables separated by a blank line.
/// json: {"command", "tables": [{"name", "columns", "rows": [{col: value}]}]}.
/// pretty: aligned columns, 4 decimals.
void render(const Report& report, OutputFormat format, std::ostream& out);

}  // namespace claimdecomp::cli

#include "claimdecomp/evalkit/agreement.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "claimdecomp/error.hpp"

namespace claimdecomp {

namespace {

std::map<std::string, std::size_t> category_index(const std::vector<std::vector<std::string>>& rows,
                                                  const std::vector<std::string>& declared) {
    std::set<std::string> cats(declared.begin(), declared.end());
    const bool closed = !declared.empty();
    for (const auto& row : rows)
        for (const auto& r : row)
            if (!cats.count(r)) {
                if (closed) throw InvalidArgument("rating '" + r + "' is not a declared category");
                cats.insert(r);
            }
    std::map<std::string, std::size_t> out;
    for (const auto& c : cats) out.emplace(c, out.size());
    return out;
}

double fraction(std::size_t num, std::size_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::optional<double> fleiss_kappa(const RatingTable& table) {
    const auto& rows = table.ratings;
    if (rows.size() < 2) throw InvalidArgument("fleiss_kappa: need at least 2 items");
    const std::size_t raters = rows.front().size();
    if (raters < 2) throw InvalidArgument("fleiss_kappa: need at least 2 raters per item");
    for (const auto& row : rows)
        if (row.size() != raters)
            throw InvalidArgument("fleiss_kappa: every item needs the same number of raters");

    const auto cats = category_index(rows, table.categories);
    const double n = static_cast<double>(raters);
    const double items = static_cast<double>(rows.size());
    std::vector<double> column_total(cats.size(), 0.0);
    double p_bar = 0.0;
    for (const auto& row : rows) {
        std::vector<double> counts(cats.size(), 0.0);
        for (const auto& r : row) counts[cats.at(r)] += 1.0;
        double agree = 0.0;
        for (std::size_t j = 0; j < counts.size(); ++j) {
            agree += counts[j] * (counts[j] - 1.0);
            column_total[j] += counts[j];
        }
        p_bar += agree / (n * (n - 1.0));
    }
    p_bar /= items;
    double p_e = 0.0;
    for (double t : column_total) {
        const double p = t / (items * n);
        p_e += p * p;
    }
    if (p_e >= 1.0) return std::nullopt;
    return (p_bar - p_e) / (1.0 - p_e);
}

std::optional<double> cohen_kappa(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b,
                                  const std::vector<std::string>& categories) {
    if (a.empty() || a.size() != b.size())
        throw InvalidArgument("cohen_kappa: rating lists must be nonempty and of equal length");
    const auto cats = category_index({a, b}, categories);
    std::vector<std::size_t> ma(cats.size(), 0), mb(cats.size(), 0);
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++ma[cats.at(a[i])];
        ++mb[cats.at(b[i])];
        same += a[i] == b[i];
    }
    const double po = fraction(same, a.size());
    double pe = 0.0;
    for (std::size_t j = 0; j < cats.size(); ++j) pe += fraction(ma[j], a.size()) * fraction(mb[j], b.size());
    if (pe >= 1.0) return std::nullopt;
    return (po - pe) / (1.0 - pe);
}

UnmatchedFractions unmatched_fraction(const UnmatchedJudgment& pair) {
    if (pair.first.empty() || pair.second.empty())
        throw InvalidArgument("unmatched_fraction: both annotations need at least one question");
    const auto share = [](const std::vector<bool>& flags) {
        return fraction(static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true)),
                        flags.size());
    };
    const bool first_larger = pair.first.size() >= pair.second.size();
    UnmatchedFractions out;
    out.more_qs = share(first_larger ? pair.first : pair.second);
    out.fewer_qs = share(first_larger ? pair.second : pair.first);
    out.all = (out.more_qs + out.fewer_qs) / 2.0;
    return out;
}

UnmatchedFractions unmatched_fraction(const std::vector<UnmatchedJudgment>& pairs) {
    if (pairs.empty()) throw InvalidArgument("unmatched_fraction: no annotation pairs");
    UnmatchedFractions sum;
    for (const auto& p : pairs) {
        const auto f = unmatched_fraction(p);
        sum.all += f.all;
        sum.more_qs += f.more_qs;
        sum.fewer_qs += f.fewer_qs;
    }
    const auto n = static_cast<double>(pairs.size());
    return {sum.all / n, sum.more_qs / n, sum.fewer_qs / n};
}

}  // namespace claimdecomp

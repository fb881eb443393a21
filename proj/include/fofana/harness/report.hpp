#pragma once

// Verification reports: one record per checked case, fitted slopes, and a
// verdict. Serialized as JSON (one object per suite) and a CSV margin table.

#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fofana::harness {

using json = nlohmann::json;

/// One checked inequality lhs <= rhs + slack. `hard` cases decide the verdict;
/// the rest are recorded for inspection only.
struct CaseRecord {
    std::string id;
    json inputs = json::object();
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool hard = true;
    std::string note;

    double margin() const { return rhs + slack - lhs; }
    bool passed() const { return std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + slack; }
};

struct SlopeRecord {
    std::string id;
    std::vector<double> x;
    std::vector<double> y;
    double fitted = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool hard = true;

    bool passed() const { return std::isfinite(fitted) && std::abs(fitted - expected) <= tolerance; }
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CaseRecord> cases;
    std::vector<SlopeRecord> slopes;
    json notes = json::object();

    CaseRecord& add_case(CaseRecord c)
    {
        cases.push_back(std::move(c));
        return cases.back();
    }

    SlopeRecord& add_slope(SlopeRecord s)
    {
        slopes.push_back(std::move(s));
        return slopes.back();
    }

    std::size_t violations() const
    {
        std::size_t v = 0;
        for (const auto& c : cases) v += c.hard && !c.passed();
        for (const auto& s : slopes) v += s.hard && !s.passed();
        return v;
    }

    bool passed() const { return violations() == 0; }

    /// Id of the first failing hard case or slope, empty when none.
    std::string first_violation() const
    {
        for (const auto& c : cases)
            if (c.hard && !c.passed()) return c.id;
        for (const auto& s : slopes)
            if (s.hard && !s.passed()) return s.id;
        return {};
    }
};

inline json to_json(const CaseRecord& c)
{
    return json{{"id", c.id},         {"inputs", c.inputs}, {"lhs", c.lhs},    {"rhs", c.rhs},
                {"slack", c.slack},   {"margin", c.margin()}, {"hard", c.hard}, {"passed", c.passed()},
                {"note", c.note}};
}

inline json to_json(const SlopeRecord& s)
{
    return json{{"id", s.id},       {"x", s.x},         {"y", s.y},        {"fitted", s.fitted},
                {"expected", s.expected}, {"tolerance", s.tolerance}, {"hard", s.hard}, {"passed", s.passed()}};
}

inline json to_json(const VerificationReport& r)
{
    json cases = json::array(), slopes = json::array();
    for (const auto& c : r.cases) cases.push_back(to_json(c));
    for (const auto& s : r.slopes) slopes.push_back(to_json(s));
    json out{{"name", r.suite},
             {"seed", r.seed},
             {"cases", cases},
             {"slopes", slopes},
             {"violations", r.violations()},
             {"verdict", r.passed() ? "pass" : "fail"},
             {"notes", r.notes}};
    if (!r.passed()) {
        std::string id = r.first_violation();
        out["first_violation"] = id;
        for (const auto& c : r.cases)
            if (c.id == id) out["first_violation_case"] = to_json(c);
    }
    return out;
}

/// CSV with columns suite,id,kind,lhs,rhs,margin,hard,passed. Slopes use
/// lhs = fitted, rhs = expected and margin = tolerance - |fitted - expected|.
inline void write_margin_csv(std::ostream& out, const std::vector<VerificationReport>& reports)
{
    out << "suite,id,kind,lhs,rhs,margin,hard,passed\n";
    out.precision(17);
    for (const auto& r : reports) {
        for (const auto& c : r.cases)
            out << r.suite << ',' << c.id << ",case," << c.lhs << ',' << c.rhs << ',' << c.margin() << ','
                << c.hard << ',' << c.passed() << '\n';
        for (const auto& s : r.slopes)
            out << r.suite << ',' << s.id << ",slope," << s.fitted << ',' << s.expected << ','
                << s.tolerance - std::abs(s.fitted - s.expected) << ',' << s.hard << ',' << s.passed() << '\n';
    }
}

} // namespace fofana::harness

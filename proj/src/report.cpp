#include "dercent/report.hpp"

#include <sstream>

#include "json.hpp"

namespace dercent {

bool VerificationReport::check(std::string name, bool pass, std::string witness)
{
    assertions.push_back({std::move(name), pass, pass ? std::string() : std::move(witness)});
    return pass;
}

bool VerificationReport::verdict() const
{
    for (const auto& [name, pass] : hypotheses)
        if (!pass)
            return false;
    for (const auto& a : assertions)
        if (!a.pass)
            return false;
    return true;
}

void VerificationReport::absorb(const VerificationReport& other, const std::string& prefix)
{
    for (const auto& [name, pass] : other.hypotheses)
        hypotheses.emplace_back(prefix + name, pass);
    for (const auto& [name, value] : other.dimensions)
        dimensions.emplace_back(prefix + name, value);
    for (const auto& a : other.assertions)
        assertions.push_back({prefix + a.name, a.pass, a.witness});
    for (const auto& n : other.notes)
        notes.push_back(prefix + n);
}

std::string VerificationReport::to_json(int indent) const
{
    nlohmann::ordered_json j;
    j["claim"] = claim;
    j["hypotheses"] = nlohmann::ordered_json::array();
    for (const auto& [name, pass] : hypotheses)
        j["hypotheses"].push_back({{"name", name}, {"pass", pass}});
    j["dimensions"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : dimensions)
        j["dimensions"][name] = value;
    j["assertions"] = nlohmann::ordered_json::array();
    for (const auto& a : assertions) {
        nlohmann::ordered_json entry{{"name", a.name}, {"pass", a.pass}};
        if (!a.witness.empty())
            entry["witness"] = a.witness;
        j["assertions"].push_back(entry);
    }
    if (!notes.empty())
        j["notes"] = notes;
    j["verdict"] = verdict() ? "pass" : "fail";
    return j.dump(indent);
}

std::string VerificationReport::to_text() const
{
    std::ostringstream out;
    out << claim << "\n";
    if (!hypotheses.empty()) {
        out << "hypotheses:\n";
        for (const auto& [name, pass] : hypotheses)
            out << "  [" << (pass ? "ok" : "FAILED") << "] " << name << "\n";
    }
    if (!dimensions.empty()) {
        out << "dimensions:\n";
        for (const auto& [name, value] : dimensions)
            out << "  " << name << " = " << value << "\n";
    }
    if (!assertions.empty()) {
        out << "assertions:\n";
        for (const auto& a : assertions) {
            out << "  [" << (a.pass ? "ok" : "FAILED") << "] " << a.name << "\n";
            if (!a.witness.empty())
                out << "      witness: " << a.witness << "\n";
        }
    }
    for (const auto& n : notes)
        out << "note: " << n << "\n";
    out << "verdict: " << (verdict() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string literal(std::span<const Scalar> v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += to_literal(v[i]);
    }
    return out + ")";
}

std::string literal(const Matrix& m)
{
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r > 0)
            out += ", ";
        out += "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c > 0)
                out += ", ";
            out += to_literal(m(r, c));
        }
        out += "]";
    }
    return out + "]";
}

} // namespace dercent

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dercent/exactla.hpp"

namespace dercent {

struct Assertion {
    std::string name;
    bool pass = false;
    std::string witness; // empty when there is nothing to show
};

struct VerificationReport {
    std::string claim;
    std::vector<std::pair<std::string, bool>> hypotheses;
    std::vector<std::pair<std::string, long>> dimensions;
    std::vector<Assertion> assertions;
    std::vector<std::string> notes; // informational lines, not part of the verdict

    void hypothesis(std::string name, bool pass) { hypotheses.emplace_back(std::move(name), pass); }
    void dimension(std::string name, std::size_t value) { dimensions.emplace_back(std::move(name), static_cast<long>(value)); }
    bool check(std::string name, bool pass, std::string witness = {});
    void note(std::string line) { notes.push_back(std::move(line)); }

    /// Pass iff every hypothesis and every assertion holds.
    bool verdict() const;
    /// Merges another report's hypotheses, dimensions, assertions and notes.
    void absorb(const VerificationReport& other, const std::string& prefix = {});

    std::string to_json(int indent = 2) const;
    std::string to_text() const;
};

/// "(c0, c1, ...)" in scalar-literal form.
std::string literal(std::span<const Scalar> v);
/// "[[row0], [row1], ...]" in scalar-literal form.
std::string literal(const Matrix& m);

} // namespace dercent

#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "dercent/decomposition.hpp"

namespace dercent::io {

/// {"kind": "rational"} | {"kind": "cyclotomic", "m": m} | {"kind": "prime", "p": p, "m": m}
std::string field_to_json(Field f);
Field field_from_json(std::string_view text);

/// {"field": {...}, "dim": n, "basis": [...], "table": [[[[k, "c"], ...], ...], ...]}
std::string algebra_to_json(const Algebra& a);
Algebra algebra_from_json(std::string_view text);

/// Resolves an algebra reference (catalog name) over a field.
using AlgebraResolver = std::function<Algebra(const std::string& name, Field f)>;

/// Catalog names first, then algebra definition files.
Algebra default_resolver(const std::string& name, Field f);

/// {"algebra": name-or-inline, "m": m, "matrix": [["c", ...], ...]}
std::string automorphism_to_json(const Automorphism& sigma, const std::string& algebra_name = {});
Automorphism automorphism_from_json(std::string_view text, Field f, const AlgebraResolver& resolve = default_resolver);

/// {"field": {...}, "A": ref, "S": ref, "sigma1": [[...]], "sigma2": [[...]], "m": m, "q": q, "u": "(...)"}
std::string setup_to_json(const SetupSpec& spec, const std::string& a_name = {}, const std::string& s_name = {});
SetupSpec setup_from_json(std::string_view text, const AlgebraResolver& resolve = default_resolver);

/// "(c0, c1, ...)" with scalar literals.
Vec parse_element(std::string_view text, const Algebra& a);
Matrix parse_matrix_rows(std::string_view json_text, Field f);

std::string read_file(const std::string& path);
bool file_exists(const std::string& path);

} // namespace dercent::io

#include "dercent/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dercent/catalog.hpp"
#include "dercent/error.hpp"
#include "json.hpp"

namespace dercent::io {

using json = nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
}

template <class T>
T get(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing key '") + key + "'", 0);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ParseError(std::string("key '") + key + "' has the wrong type", 0);
    }
}

json field_json(Field f)
{
    json j;
    j["kind"] = std::string(to_string(f.kind()));
    if (f.kind() == FieldKind::cyclotomic)
        j["m"] = f.m();
    if (f.kind() == FieldKind::prime) {
        j["p"] = f.p();
        j["m"] = f.m();
    }
    return j;
}

Field field_of(const json& j)
{
    const auto kind = get<std::string>(j, "kind");
    if (kind == "rational")
        return rationals();
    if (kind == "cyclotomic")
        return make_field(FieldKind::cyclotomic, get<int>(j, "m"));
    if (kind == "prime")
        return make_field(FieldKind::prime, j.contains("m") ? get<int>(j, "m") : 1, get<std::uint64_t>(j, "p"));
    throw ParseError("unknown field kind '" + kind + "'", 0);
}

json algebra_json(const Algebra& a)
{
    json j;
    j["field"] = field_json(a.field());
    j["dim"] = a.dim();
    j["basis"] = a.basis_names();
    json table = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < a.dim(); ++k) {
            json cell = json::array();
            for (const auto& [idx, c] : a.product(i, k))
                cell.push_back(json::array({idx, to_literal(c)}));
            row.push_back(cell);
        }
        table.push_back(row);
    }
    j["table"] = table;
    return j;
}

Algebra algebra_of(const json& j)
{
    const Field f = field_of(get<json>(j, "field"));
    const auto n = get<std::size_t>(j, "dim");
    auto names = get<std::vector<std::string>>(j, "basis");
    if (names.size() != n)
        throw ParseError("basis has " + std::to_string(names.size()) + " names, dim is " + std::to_string(n), 0);
    const json table = get<json>(j, "table");
    if (!table.is_array() || table.size() != n)
        throw ParseError("table must have dim rows", 0);
    std::vector<SparseRow> rows(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!table[i].is_array() || table[i].size() != n)
            throw ParseError("table row " + std::to_string(i) + " must have dim entries", 0);
        for (std::size_t k = 0; k < n; ++k)
            for (const auto& term : table[i][k]) {
                if (!term.is_array() || term.size() != 2 || !term[0].is_number_unsigned() || !term[1].is_string())
                    throw ParseError("table entries are [index, \"scalar\"] pairs", 0);
                const auto idx = term[0].get<std::size_t>();
                if (idx >= n)
                    throw ParseError("table index " + std::to_string(idx) + " out of range", 0);
                rows[i * n + k].emplace_back(idx, parse_scalar(term[1].get<std::string>(), f));
            }
    }
    return Algebra(f, std::move(names), std::move(rows));
}

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(to_literal(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_of(const json& j, Field f)
{
    if (!j.is_array() || j.empty())
        throw ParseError("matrix must be a non-empty array of rows", 0);
    const std::size_t rows = j.size(), cols = j[0].size();
    Matrix out(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ParseError("matrix rows must have equal length", 0);
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_string())
                throw ParseError("matrix entries are scalar-literal strings", 0);
            out(r, c) = parse_scalar(j[r][c].get<std::string>(), f);
        }
    }
    return out;
}

Algebra algebra_ref(const json& j, Field f, const AlgebraResolver& resolve)
{
    if (j.is_string())
        return resolve(j.get<std::string>(), f);
    Algebra a = algebra_of(j);
    if (a.field() != f)
        throw Error(ErrorKind::FieldMismatch, "inline algebra over a different field");
    return a;
}

} // namespace

std::string field_to_json(Field f)
{
    return field_json(f).dump(2);
}

Field field_from_json(std::string_view text)
{
    return field_of(parse_json(text));
}

std::string algebra_to_json(const Algebra& a)
{
    return algebra_json(a).dump(2);
}

Algebra algebra_from_json(std::string_view text)
{
    return algebra_of(parse_json(text));
}

Algebra default_resolver(const std::string& name, Field f)
{
    if (file_exists(name)) {
        Algebra a = algebra_from_json(read_file(name));
        if (a.field() != f)
            throw Error(ErrorKind::FieldMismatch, name + " is defined over " + a.field().describe());
        return a;
    }
    return catalog::algebra(name, f);
}

std::string automorphism_to_json(const Automorphism& sigma, const std::string& algebra_name)
{
    json j;
    j["field"] = field_json(sigma.algebra.field());
    j["algebra"] = algebra_name.empty() ? algebra_json(sigma.algebra) : json(algebra_name);
    j["m"] = sigma.m;
    j["matrix"] = matrix_json(sigma.matrix);
    return j.dump(2);
}

Automorphism automorphism_from_json(std::string_view text, Field f, const AlgebraResolver& resolve)
{
    const json j = parse_json(text);
    if (j.contains("field"))
        f = field_of(j["field"]);
    const Algebra a = algebra_ref(get<json>(j, "algebra"), f, resolve);
    return check_automorphism(a, matrix_of(get<json>(j, "matrix"), f), get<int>(j, "m"));
}

std::string setup_to_json(const SetupSpec& spec, const std::string& a_name, const std::string& s_name)
{
    json j;
    j["field"] = field_json(spec.a.field());
    j["A"] = a_name.empty() ? algebra_json(spec.a) : json(a_name);
    j["S"] = s_name.empty() ? algebra_json(spec.s) : json(s_name);
    j["sigma1"] = matrix_json(spec.sigma1);
    j["sigma2"] = matrix_json(spec.sigma2);
    j["m"] = spec.m;
    j["q"] = spec.q;
    if (spec.u)
        j["u"] = literal(*spec.u);
    return j.dump(2);
}

SetupSpec setup_from_json(std::string_view text, const AlgebraResolver& resolve)
{
    const json j = parse_json(text);
    const Field f = field_of(get<json>(j, "field"));
    SetupSpec spec;
    spec.a = algebra_ref(get<json>(j, "A"), f, resolve);
    spec.s = algebra_ref(get<json>(j, "S"), f, resolve);
    spec.sigma1 = matrix_of(get<json>(j, "sigma1"), f);
    spec.sigma2 = matrix_of(get<json>(j, "sigma2"), f);
    spec.m = get<int>(j, "m");
    spec.q = j.contains("q") ? get<int>(j, "q") : 1;
    if (j.contains("u"))
        spec.u = parse_element(get<std::string>(j, "u"), spec.s);
    return spec;
}

Vec parse_element(std::string_view text, const Algebra& a)
{
    std::size_t lo = 0;
    while (lo < text.size() && std::isspace(static_cast<unsigned char>(text[lo])))
        ++lo;
    std::size_t hi = text.size();
    while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1])))
        --hi;
    if (lo >= hi || text[lo] != '(')
        throw ParseError("element literal must start with '('", lo);
    if (text[hi - 1] != ')')
        throw ParseError("element literal must end with ')'", hi - 1);
    Vec out;
    std::size_t start = lo + 1;
    int depth = 0;
    for (std::size_t i = lo + 1; i < hi; ++i) {
        const char c = text[i];
        if (c == '[')
            ++depth;
        else if (c == ']')
            --depth;
        else if ((c == ',' && depth == 0) || i == hi - 1) {
            try {
                out.push_back(parse_scalar(text.substr(start, i - start), a.field()));
            } catch (const ParseError& e) {
                throw ParseError("invalid coordinate", start + e.position());
            }
            start = i + 1;
        }
    }
    if (out.size() != a.dim())
        throw ParseError("element has " + std::to_string(out.size()) + " coordinates, algebra has dimension " +
                             std::to_string(a.dim()),
                         hi - 1);
    return out;
}

Matrix parse_matrix_rows(std::string_view json_text, Field f)
{
    return matrix_of(parse_json(json_text), f);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool file_exists(const std::string& path)
{
    std::error_code ec;
    return std::filesystem::is_regular_file(path, ec);
}

} // namespace dercent::io

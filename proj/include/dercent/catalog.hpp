#pragma once

#include <string>
#include <vector>

#include "dercent/laurent.hpp"

namespace dercent::catalog {

/// e, h, f with [e, f] = h, [h, e] = 2e, [h, f] = -2f.
Algebra sl2(Field f);
/// k = e - f, h, x = e + f with [k, x] = 2h, [h, k] = 2x, [h, x] = 2k.
Algebra sl2_graded(Field f);
/// k[x]/(x^2), basis 1, x.
Algebra dual_numbers(Field f);
/// Group algebra of Z_n, basis g^0, ..., g^(n-1).
Algebra group_algebra(Field f, std::size_t n);
/// n-dimensional algebra with zero product.
Algebra zero_algebra(Field f, std::size_t n);
/// The ground field as a one-dimensional algebra.
Algebra ground_field(Field f);

/// diag(-1, 1, -1) on (e, h, f).
Matrix sl2_sign(Field f);
/// diag(1, -1, -1) on (k, h, x).
Matrix sl2_graded_involution(Field f);

/// Resolves "sl2", "sl2-graded", "dual-numbers", "group-algebra(n)", "zero(n)", "k",
/// "quotient-laurent(N,m)"; ParseError otherwise.
Algebra algebra(const std::string& name, Field f);

struct Entry {
    std::string name;
    std::string kind; // "algebra", "setup" or "laurent"
    std::string description;
};

std::vector<Entry> entries();

/// Finite setups: "sl2-twisted-flagship", "sl2-graded-twisted", "sl2-f5-quotient",
/// "k-f5-quotient-laurent", "sl2-untwisted".
SetupSpec setup(const std::string& name);
bool is_setup(const std::string& name);

/// A Laurent-model example with its fixed-point derivation.
struct LaurentExample {
    LoopSetup setup;
    LoopDerivation d;
    std::vector<LoopElement> targets;
    std::string description;
};

/// A = k, m = 4, forward, u = z, d = restriction of 1 (x) z d/dz.
LaurentExample exa_bm();
/// Same data as exa_bm, evaluated through the extension formula.
LaurentExample last_exa_i();
/// A = k, d = t^(n+1) d/dt on the fixed points, t = z^m; u = z^-1 for the
/// inverse style, u = z for the forward style.
LaurentExample last_exa_ii(int m, long n, GradingStyle style = GradingStyle::inverse);

bool is_laurent(const std::string& name);

} // namespace dercent::catalog

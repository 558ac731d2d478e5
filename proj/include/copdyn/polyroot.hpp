#pragma once

#include <vector>

namespace copdyn::polyroot {

// Polynomials as ascending coefficient vectors. Sturm chains give exact
// distinct-real-root counts at desk scale; isolation refines by count-guided
// bisection, which certifies even-multiplicity roots that ordinary
// sign-change bisection cannot.

using Poly = std::vector<double>;

Poly trimmed(Poly p);
int degree(const Poly& p);
double eval(const Poly& p, double x);
Poly derivative(const Poly& p);

/// All distinct real roots; empty for constants (including the zero
/// polynomial, which callers must special-case).
std::vector<double> real_roots(const Poly& p);

int count_real_roots(const Poly& p);

/// p(x) > 0 for every real x.
bool positive_everywhere(const Poly& p);

/// p(x) >= 0 for every real x.
bool nonnegative_everywhere(const Poly& p);

}  // namespace copdyn::polyroot

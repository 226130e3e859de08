// Decomposes a few small bodies and prints each normal form as a
// max-plus expression, together with the oracle verdict.

#include <iostream>

#include "tropfactor/tropfactor.hpp"

using namespace tropfactor;

int main() {
    const Body bodies[] = {
        convex_hull({{0, 0}, {2, 0}, {2, 2}}),
        Body::segment({-1, -1}, {1, 0}),
        convex_hull({{0, 0}, {1, 1}, {3, 0}}),
        convex_hull({{1, 0}, {0, 1}, {1, 3}, {4, 1}}),
    };
    for (const Body& b : bodies) {
        DecompositionReport r = decompose(b);
        std::cout << b << "\n  " << to_expression_string(to_factorization(r.normal_form)) << "\n  verified "
                  << (r.verified ? "yes" : "no") << '\n';
    }
}

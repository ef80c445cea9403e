#pragma once

#include "polyapprox/polytope.hpp"

namespace pa {

struct FlagReport {
    long long flag_lattice = 0;
    long long flag_phi = 0;
    long long flag_psi = 0;
    bool methods_agree = false;
};

// Number of maximal chains f_0 c f_1 c ... c f_{n-1} (f_n = P implicit),
// counted over the face lattice. dim <= 5.
long long flag_via_lattice(const VPolytope& p);

// Vertex-figure recurrence: phi_1 = 2, phi_n = sum over vertices of
// phi_{n-1}(P cut by a hyperplane strictly separating that vertex).
long long flag_phi(const VPolytope& p);

// Facet recurrence: psi_1 = 2, psi_n = sum over facets of psi_{n-1}(facet).
long long flag_psi(const VPolytope& p);

FlagReport compute_flags(const VPolytope& p);

// (flag/(n! n^{n-1}), flag/((n+1)^{n-1} (n-1)!)) - the floating-body and
// uniform-random-polytope constants carried by the flag number.
std::pair<double, double> flag_constants(const VPolytope& p);
std::pair<double, double> flag_constants(long long flag, int n);

} // namespace pa

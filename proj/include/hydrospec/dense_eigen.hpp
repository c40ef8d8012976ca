#ifndef HYDROSPEC_DENSE_EIGEN_HPP
#define HYDROSPEC_DENSE_EIGEN_HPP

#include <complex>
#include <vector>

namespace hydrospec {

/// Eigenvalues of a dense real n x n matrix (row-major), by balancing,
/// reduction to upper Hessenberg form and Francis double-shift QR.
/// Used as the oracle for the secular multilayer solver; kept independent of
/// it on purpose.
std::vector<std::complex<double>> dense_eigenvalues(std::vector<double> a,
                                                    int n);

/// Max modulus difference after sorted pairing of two equal-size eigenvalue
/// multisets (lexicographic by real then imaginary part).
double multiset_distance(std::vector<std::complex<double>> a,
                         std::vector<std::complex<double>> b);

} // namespace hydrospec

#endif

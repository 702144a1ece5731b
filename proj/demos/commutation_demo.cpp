// Builds the generators of a 2-dimensional quantum torus and prints the
// twisted products U_1 U_2 and U_2 U_1 together with the expected phase.

#include <iomanip>
#include <iostream>

#include <nctorus/nctorus.hpp>

int main()
{
    using namespace nctorus;

    const double t21 = 0.25;
    const ThetaMatrix theta({{0.0, -t21}, {t21, 0.0}});
    const ReducedTheta reduced(theta);
    const LatticeBox box(2, 1);

    const TorusElement u1 = monomial(reduced, {1, 0}, box);
    const TorusElement u2 = monomial(reduced, {0, 1}, box);

    const TorusElement u1u2 = twisted_convolve(u1, u2);
    const TorusElement u2u1 = twisted_convolve(u2, u1);

    std::cout << std::setprecision(6) << std::fixed;
    std::cout << "U1 U2 = " << u1u2.coefficient({1, 1}) << " U^(1,1)\n";
    std::cout << "U2 U1 = " << u2u1.coefficient({1, 1}) << " U^(1,1)\n";
    std::cout << "exp(2 pi i theta_21) = " << unit_phase(t21) << '\n';

    const TorusElement x = u1 + cplx(0.5, 0.0) * u2;
    std::cout << "tau(x# x) = " << trace(twisted_convolve(involution(x), x)).real()
              << ", ||x||_2^2 = " << l2_norm(x) * l2_norm(x) << '\n';
    return 0;
}

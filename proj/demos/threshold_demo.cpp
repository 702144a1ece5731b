// Samples a kernel in H^{1,1} on the 2-torus and prints its truncated Schatten
// norms on either side of the critical exponent r* = 2d / (d + 2(a1 + a2)).

#include <iostream>

#include <nctorus/nctorus.hpp>

int main()
{
    using namespace nctorus;

    const ReducedTheta theta(default_theta(2));
    const double a1 = 1.0, a2 = 1.0;
    const double r_star = critical_exponent(2, a1, a2);
    std::cout << "r* = " << r_star << '\n';

    for (int n : {2, 4, 6}) {
        const NCKernel k = random_kernel(theta, n, a1 + 1.5, a2 + 1.5, 7);
        const SingularSpectrum mu = singular_values(kernel_matrix(k));
        std::cout << "N=" << n << "  mu0=" << mu[0];
        for (double r : {0.5, r_star, 1.0, 2.0})
            std::cout << "  ||T_k||_S" << r << "=" << schatten_norm(mu, r);
        std::cout << '\n';
    }
    return 0;
}

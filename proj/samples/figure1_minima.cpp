// Prints the potential minimum and the four lowest finite-difference
// eigenvalues for the m = 1/2, 1, 3/2 members at w = 1, a = 2, alpha = 4.

#include <cstdio>

#include "semiconf/models.hpp"
#include "semiconf/verify.hpp"

int main()
{
    using namespace semiconf;
    for (double m : {0.5, 1.0, 1.5}) {
        const SemiconfinedModel model(1.0, 2.0, 4.0, m);
        const auto minimum = potential_minimum(model);
        std::printf("m = %.1f  x_min = % .10f  V_min = % .10f\n", m, minimum.x_min, minimum.v_min);
        for (const auto& row : verify::spectrum_check(model, verify::default_grid(model), 4))
            std::printf("    E_%u = %.9f  (exact %.1f)\n", row.n, row.numeric, row.analytic);
    }
}

// Builds the m = 3/2 potential from the isotonic oscillator term by term and
// compares it with the closed form.

#include <cstdio>

#include "semiconf/models.hpp"
#include "semiconf/pct.hpp"

int main()
{
    using namespace semiconf;
    const SemiconfinedModel model(1.0, 2.0, 4.0, 1.5);
    const pct::Pipeline pipeline(model);
    const auto& p = pipeline.params();
    std::printf("g = %.4f  a_bar = %.4f  c_bar = %.4f\n", pipeline.source().g(), p.a_bar, p.c_bar);
    for (double x : {-1.9, -1.0, 0.0, 2.0, 8.0}) {
        const double u = pct::change_of_variable(pipeline.profile(), p, x);
        std::printf("x = % .2f  u = %.6f  a_bar^2 U = %.10f  correction = % .10f  V = %.10f  closed = %.10f\n", x, u,
                    p.a_bar * p.a_bar * isotonic_potential(pipeline.source(), u),
                    pct::mass_correction(pipeline.profile(), x), pipeline.potential(x), potential(model, x));
    }
}

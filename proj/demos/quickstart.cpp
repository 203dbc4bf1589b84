// Builds a small instance, solves it under both ordering rules, and checks
// the certificate with the enumeration oracle.
#include <iostream>

#include <pivotal/pivotal.hpp>

int main() {
    using namespace pivotal;

    // max -x1 + x2  subject to  x1 + x2 <= 10, -x1 <= -5, x >= 0
    lp_instance<double> inst;
    inst.k = 2;
    inst.n = 2;
    inst.A = matrix<double>(2, 2);
    inst.A(0, 0) = 1;
    inst.A(0, 1) = 1;
    inst.A(1, 0) = -1;
    inst.A(1, 1) = 0;
    inst.b = {10, -5};
    inst.f = {-1, 1};

    auto rep = solve(inst);
    std::cout << "status: " << status_name(rep.status) << " in " << rep.iterations << " iterations\n";
    std::cout << "x =";
    for (double v : rep.x) std::cout << ' ' << v;
    std::cout << "\ny =";
    for (double v : rep.y) std::cout << ' ' << v;
    std::cout << "\nobjective = " << *rep.primal_objective << '\n';

    auto cert = verify_certificate(inst, rep.x, rep.y, 1e-6);
    std::cout << "certificate: " << (cert.pass ? "pass" : "fail") << '\n';

    auto oc = brute_force_solve(inst);
    std::cout << "oracle: " << oracle_status_name(oc.status) << ", objective " << oc.objective << '\n';

    solve_options<double> by_index;
    by_index.rule.order = minor_order::ascending_index;
    auto rep2 = solve(inst, by_index);
    std::cout << "index rule: " << rep2.iterations << " iterations\n";

    // exact arithmetic over the same data
    auto exact = solve(klee_minty<rational>(3));
    std::cout << "Klee-Minty n=3 exact x3 = " << exact.x[2] << '\n';
    return 0;
}

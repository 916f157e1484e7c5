#include "naq/generator.hpp"

#include <algorithm>
#include <cmath>

namespace naq {

namespace {

GeneratorContext::JumpChannel make_channel(const ComplexMatrix& op, double rate) {
    GeneratorContext::JumpChannel ch;
    ch.op = op;
    ch.rate = rate;
    ch.op_dag = op.adjoint();
    ch.dag_op = ch.op_dag * op;
    return ch;
}

} // namespace

GeneratorContext GeneratorContext::from_params(const SystemParams& p) {
    std::array<BathKernels, 2> kernels{
        BathKernels::zero_temperature(p.gamma_plus[0], p.eps_plus[0]),
        BathKernels::zero_temperature(p.gamma_plus[1], p.eps_plus[1])};
    return with_bath(p, kernels);
}

GeneratorContext GeneratorContext::with_bath(const SystemParams& p,
                                             const std::array<BathKernels, 2>& kernels) {
    p.validate();
    GeneratorContext ctx;
    ctx.params = p;
    ctx.bath = kernels;
    ctx.hamiltonian = build_tfim(p);
    const ComplexMatrix sm = sigma_minus();
    const ComplexMatrix sp = sm.adjoint();
    for (int site = 1; site <= 2; ++site) {
        ctx.jumps.push_back(make_channel(embed(sm, site), kernels[site - 1].gamma_plus));
        if (kernels[site - 1].gamma_minus != 0.0)
            ctx.absorption.push_back(make_channel(embed(sp, site), kernels[site - 1].gamma_minus));
        ctx.lambda[site - 1] = p.feedback_lambda(site);
        ctx.sigma_z_embedded[site - 1] = embed(pauli(Axis::z), site);
    }
    return ctx;
}

ComplexMatrix dissipator(const ComplexMatrix& l, const ComplexMatrix& rho) {
    if (l.dim() != rho.dim()) throw std::invalid_argument("dissipator: dimension mismatch");
    const ComplexMatrix ldag = l.adjoint();
    const ComplexMatrix ll = ldag * l;
    ComplexMatrix out = l * rho * ldag;
    add_scaled(out, -0.5, ll * rho);
    add_scaled(out, -0.5, rho * ll);
    return out;
}

std::array<std::array<ComplexMatrix, 6>, 2> closed_form_associators(const ComplexMatrix& rho,
                                                                    const SystemParams& p) {
    std::array<std::array<ComplexMatrix, 6>, 2> out;
    for (int site = 1; site <= 2; ++site) {
        const ComplexMatrix z = embed(pauli(Axis::z), site);
        const double g = p.coupling(site);
        const double rz = expectation(rho, z).real();
        const cplx c0(0.0, -g * g / 48.0);
        ComplexMatrix x = z;
        x *= c0 * rz * p.kappa[site - 1];
        ComplexMatrix minus_x = x;
        minus_x *= -1.0;
        // A1,A3,A6 = -X; A2,A4,A5 = +X
        out[site - 1] = {minus_x, x, minus_x, x, x, minus_x};
    }
    return out;
}

ComplexMatrix feedback(const ComplexMatrix& rho, const GeneratorContext& ctx) {
    ComplexMatrix out(rho.dim());
    for (int a = 0; a < 2; ++a) {
        const double rz = expectation(rho, ctx.sigma_z_embedded[a]).real();
        add_scaled(out, -ctx.lambda[a] * rz, ctx.sigma_z_embedded[a]);
    }
    return out;
}

void rhs_into(ComplexMatrix& out, const ComplexMatrix& rho, const GeneratorContext& ctx,
              RhsWorkspace& ws) {
    const int n = rho.dim();
    // -i [H, rho]
    mul_into(ws.t1, ctx.hamiltonian, rho);
    mul_into(ws.t2, rho, ctx.hamiltonian);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = cplx(0.0, -1.0) * (ws.t1(i, j) - ws.t2(i, j));
    // dissipators
    for (const auto& ch : ctx.jumps) {
        if (ch.rate == 0.0) continue;
        mul_into(ws.t1, ch.op, rho);
        mul_into(ws.t2, ws.t1, ch.op_dag);
        add_scaled(out, ch.rate, ws.t2);
        mul_into(ws.t1, ch.dag_op, rho);
        add_scaled(out, -0.5 * ch.rate, ws.t1);
        mul_into(ws.t1, rho, ch.dag_op);
        add_scaled(out, -0.5 * ch.rate, ws.t1);
    }
    // nonassociative feedback, recomputed from this rho
    for (int a = 0; a < 2; ++a) {
        if (ctx.lambda[a] == 0.0) continue;
        const double rz = expectation(rho, ctx.sigma_z_embedded[a]).real();
        add_scaled(out, -ctx.lambda[a] * rz, ctx.sigma_z_embedded[a]);
    }
}

ComplexMatrix rhs(const ComplexMatrix& rho, const GeneratorContext& ctx) {
    ComplexMatrix out(rho.dim());
    RhsWorkspace ws(rho.dim());
    rhs_into(out, rho, ctx, ws);
    return out;
}

ComplexMatrix general_linear_generator(const ComplexMatrix& rho, const GeneratorContext& ctx) {
    // commutator + dissipator core (emission and, at finite T, absorption)
    ComplexMatrix out = ctx.hamiltonian * rho;
    add_scaled(out, -1.0, rho * ctx.hamiltonian);
    out *= cplx(0.0, -1.0);
    for (const auto& ch : ctx.jumps) {
        if (ch.rate != 0.0) add_scaled(out, ch.rate, dissipator(ch.op, rho));
    }
    for (const auto& ch : ctx.absorption) {
        if (ch.rate != 0.0) add_scaled(out, ch.rate, dissipator(ch.op, rho));
    }
    // Lambda_1 (A1+A3+A6) + Lambda_2 (A2+A4+A5) = 3 (Lambda_2 - Lambda_1) X
    for (int a = 0; a < 2; ++a) {
        const auto lam = lambda_coefficients(ctx.bath[a]);
        const double g = ctx.params.coupling(a + 1);
        const double rz = expectation(rho, ctx.sigma_z_embedded[a]).real();
        const cplx c0(0.0, -g * g / 48.0);
        const cplx x_coeff = c0 * rz * ctx.params.kappa[a];
        add_scaled(out, 3.0 * (lam[1] - lam[0]) * x_coeff, ctx.sigma_z_embedded[a]);
    }
    return out;
}

std::vector<BohrComponent> bohr_decompose(const ComplexMatrix& h, const ComplexMatrix& s) {
    if (h.dim() != s.dim()) throw std::invalid_argument("bohr_decompose: dimension mismatch");
    const int n = h.dim();
    const EigResult eig = hermitian_eig(h);

    double emax = 0.0;
    for (double e : eig.values) emax = std::max(emax, std::abs(e));
    const double tol = 1e-9 * std::max(emax, 1.0);

    // Cluster eigenvalues into degenerate groups.
    std::vector<std::pair<double, std::vector<int>>> groups;
    for (int i = 0; i < n; ++i) {
        if (!groups.empty() && std::abs(eig.values[i] - groups.back().first) <= tol)
            groups.back().second.push_back(i);
        else
            groups.push_back({eig.values[i], {i}});
    }

    // s in the eigenbasis: s_eig = V+ s V
    const ComplexMatrix s_eig = eig.vectors.adjoint() * s * eig.vectors;

    std::vector<BohrComponent> comps;
    for (const auto& [ea, rows] : groups) {
        for (const auto& [eb, cols] : groups) {
            // block P_a S P_b, back in the original basis
            ComplexMatrix block(n);
            bool nonzero = false;
            for (int r : rows)
                for (int c : cols) {
                    block(r, c) = s_eig(r, c);
                    if (std::abs(s_eig(r, c)) > 0.0) nonzero = true;
                }
            if (!nonzero) continue;
            const ComplexMatrix comp = eig.vectors * block * eig.vectors.adjoint();
            const double omega = eb - ea;
            auto it = std::find_if(comps.begin(), comps.end(), [&](const BohrComponent& b) {
                return std::abs(b.omega - omega) <= tol;
            });
            if (it == comps.end())
                comps.push_back({omega, comp});
            else
                it->op += comp;
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const BohrComponent& a, const BohrComponent& b) { return a.omega < b.omega; });
    return comps;
}

} // namespace naq

#include "defq/pipeline.hpp"

namespace defq {

ContractionBuild splitting_from_contraction(const Contraction& c) {
    const ValidationReport rep = validate_contraction(c);
    if (!rep.ok())
        throw InvalidInput("contraction does not validate: " + rep.summary());
    ContractionBuild b;
    b.contraction = c;
    const GradedMap hd = compose(c.h, c.big.d);
    for (int j : c.big.space.degrees()) {
        b.splitting.boundaries[j] = image_basis(c.big.d.block(j + 1));
        b.splitting.harmonic[j] = image_basis(c.nabla.block(j));
        b.splitting.h_image[j] = image_basis(hd.block(j));
    }
    return b;
}

namespace {

ContractionBuild contraction_for(const ProblemSpec& spec, bool* used_user) {
    if (spec.user_contraction) {
        if (used_user)
            *used_user = true;
        return splitting_from_contraction(*spec.user_contraction);
    }
    if (used_user)
        *used_user = false;
    return build_contraction(spec.algebra.complex);
}

bool is_two_term(const GradedSpace& s) {
    for (int j : s.degrees())
        if (j != -1 && j != -2)
            return false;
    return true;
}

}  // namespace

DeformRun run_deform(const ProblemSpec& spec, int order) {
    bool used_user = false;
    const ContractionBuild cb = contraction_for(spec, &used_user);
    HptEngine engine(spec.algebra, cb.contraction, order);
    auto [tau, d] = engine.compute_tau_and_d();
    ValidationReport identities = engine.check_twisting_cochain(tau, d);
    FormalityReport formality = check_formality(engine, tau, d);
    return DeformRun{order,
                     used_user,
                     std::move(engine),
                     std::move(tau),
                     std::move(d),
                     std::move(identities),
                     std::move(formality)};
}

KuranishiRun run_kuranishi(const ProblemSpec& spec, int order) {
    bool used_user = false;
    const ContractionBuild cb = contraction_for(spec, &used_user);

    Dgla k = spec.algebra;
    bool truncated = false;
    ContractionBuild cbk = cb;
    if (!is_two_term(k.complex.space)) {
        k = truncate_minus1_minus2(spec.algebra, cb);
        cbk = build_contraction(k.complex);
        truncated = true;
    }

    KuranishiContext ctx(k, cbk, order);
    KuranishiMaps maps = kuranishi_map(ctx);
    VectorSeries inverse = formal_inverse(ctx);
    InverseChecks checks = check_inverse(ctx, maps, inverse);
    std::vector<VectorSeries> phis = obstruction_series(ctx);
    KuranishiCoalgebra ck = kuranishi_coalgebra(ctx);
    ValidationReport theorem = verify_theorem(ctx, ck);
    return KuranishiRun{order,
                        truncated,
                        std::move(k),
                        std::move(ctx),
                        std::move(maps),
                        std::move(inverse),
                        checks,
                        std::move(phis),
                        std::move(ck),
                        std::move(theorem)};
}

}  // namespace defq

#include "defq/report.hpp"

#include <algorithm>
#include <sstream>

namespace defq {

namespace {

ojson graded_map_entries(const GradedMap& m) {
    ojson arr = ojson::array();
    for (const auto& [j, blk] : m.blocks) {
        for (int c = 0; c < blk.cols; ++c) {
            ojson to = ojson::array();
            for (int r = 0; r < blk.rows; ++r)
                if (!blk.at(r, c).is_zero())
                    to.push_back({m.target.labels(j + m.degree)[r], blk.at(r, c).str()});
            if (!to.empty())
                arr.push_back({{"from", m.source.labels(j)[c]}, {"to", to}});
        }
    }
    return arr;
}

ojson dims_json(const GradedSpace& s) {
    ojson o;
    const auto ds = s.degrees();
    for (auto it = ds.rbegin(); it != ds.rend(); ++it)
        o[std::to_string(*it)] = s.dim(*it);
    return o;
}

std::string divided_power_str(const MultiIndex& m, const std::vector<Label>& vars) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += "g" + std::to_string(m[i]) + "(" + vars[i] + ")";
    }
    return s.empty() ? "1" : s;
}

ojson series_json(const VectorSeries& s, bool divided_power_form) {
    std::vector<MultiIndex> keys;
    for (const auto& [m, v] : s.coeff)
        keys.push_back(m);
    std::sort(keys.begin(), keys.end(), [](const MultiIndex& a, const MultiIndex& b) {
        if (multi_total(a) != multi_total(b))
            return multi_total(a) < multi_total(b);
        return a < b;
    });
    ojson arr = ojson::array();
    for (const auto& m : keys) {
        ojson term;
        term["monomial"] = multi_str(m, s.variables);
        if (divided_power_form)
            term["divided_power"] = divided_power_str(m, s.variables);
        term["exponents"] = m;
        ojson value = ojson::array();
        const Vec v = s.at(m);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero())
                value.push_back({s.coeff_basis[i], v[i].str()});
        term["value"] = value;
        arr.push_back(term);
    }
    return arr;
}

}  // namespace

ojson validation_json(const ValidationReport& rep) {
    ojson o;
    o["ok"] = rep.ok();
    ojson issues = ojson::array();
    for (const auto& i : rep.issues) {
        ojson issue;
        issue["check"] = i.check;
        issue["witness"] = i.witness;
        if (!i.detail.empty())
            issue["detail"] = i.detail;
        issues.push_back(issue);
    }
    o["violations"] = issues;
    return o;
}

ojson spec_summary_json(const ProblemSpec& spec) {
    ojson o;
    o["name"] = spec.name;
    o["dims"] = dims_json(spec.algebra.complex.space);
    int brackets = 0;
    for (const auto& [k, v] : spec.algebra.bracket)
        if (!v.empty())
            ++brackets;
    o["bracket_entries"] = brackets;
    o["has_user_contraction"] = spec.user_contraction.has_value();
    return o;
}

ojson validate_report(const ProblemSpec& spec, const ValidationReport& algebra_rep,
                      const std::optional<ValidationReport>& contraction_rep) {
    ojson o;
    o["command"] = "validate";
    o["spec"] = spec_summary_json(spec);
    o["algebra"] = validation_json(algebra_rep);
    if (contraction_rep)
        o["contraction"] = validation_json(*contraction_rep);
    bool ok = algebra_rep.ok() && (!contraction_rep || contraction_rep->ok());
    o["ok"] = ok;
    return o;
}

ojson deform_report(const ProblemSpec& spec, const DeformRun& run) {
    const HptEngine& e = run.engine;
    const WordBasis& wb = e.words();
    const FlatIndex& flat = e.flat();
    const GradedSpace& gsp = e.algebra().complex.space;

    ojson o;
    o["command"] = "deform";
    o["spec"] = spec_summary_json(spec);
    o["max_degree"] = run.order;

    ojson contraction;
    contraction["source"] = run.used_user_contraction ? "user" : "built";
    contraction["homology_dims"] = dims_json(e.contraction().small.space);
    contraction["nabla"] = graded_map_entries(e.contraction().nabla);
    contraction["pi"] = graded_map_entries(e.contraction().pi);
    contraction["h"] = graded_map_entries(e.contraction().h);
    o["contraction"] = contraction;

    ojson tau = ojson::array();
    for (int len = 1; len <= run.order; ++len) {
        const Matrix& t = run.tau.by_len[len];
        ojson entries = ojson::array();
        for (int col = 0; col < t.cols; ++col) {
            ojson value = ojson::array();
            for (int p = 0; p < flat.total; ++p)
                if (!t.at(p, col).is_zero()) {
                    const auto [deg, idx] = flat.address[p];
                    value.push_back({gsp.labels(deg)[idx], t.at(p, col).str()});
                }
            if (!value.empty())
                entries.push_back(
                    {{"element", wb.word(len, col).str(wb.gens)}, {"value", value}});
        }
        tau.push_back({{"word_length", len}, {"entries", entries}});
    }
    o["tau"] = tau;

    ojson dd = ojson::array();
    for (const auto& [support, mat] : run.d.by_length) {
        ojson entries = ojson::array();
        for (int col = 0; col < mat.cols; ++col) {
            ojson value = ojson::array();
            for (int r = 0; r < mat.rows; ++r)
                if (!mat.at(r, col).is_zero())
                    value.push_back({wb.gens.labels[r], mat.at(r, col).str()});
            if (!value.empty())
                entries.push_back(
                    {{"element", wb.word(support, col).str(wb.gens)}, {"value", value}});
        }
        dd.push_back({{"word_length", support}, {"corestriction", entries}});
    }
    o["perturbation"] = dd;

    o["identity_checks"] = validation_json(run.identity_report);

    ojson formality;
    formality["criterion_holds"] = run.formality.criterion_holds;
    formality["d1_nonzero"] = run.formality.d1_nonzero;
    formality["higher_differentials_zero"] = run.formality.higher_d_zero;
    ojson pairs = ojson::array();
    for (const auto& [j, k] : run.formality.failing_pairs)
        pairs.push_back({j, k});
    formality["failing_pairs"] = pairs;
    formality["verdict"] =
        run.formality.criterion_holds
            ? (run.formality.d1_nonzero ? "formal beyond the quadratic differential"
                                        : "formal")
            : "criterion fails";
    o["formality"] = formality;
    o["ok"] = run.identity_report.ok();
    return o;
}

ojson kuranishi_report(const ProblemSpec& spec, const KuranishiRun& run) {
    ojson o;
    o["command"] = "kuranishi";
    o["spec"] = spec_summary_json(spec);
    o["max_degree"] = run.order;
    o["truncated_to_two_terms"] = run.truncated;
    o["two_term_dims"] = dims_json(run.k.complex.space);
    o["tangent_variables"] = run.ctx.v0_labels();
    ojson legend = ojson::array();
    for (std::size_t i = 0; i < run.ctx.v0_labels().size(); ++i) {
        const auto [deg, idx] = run.ctx.engine().gens().origin[run.ctx.v0_gens()[i]];
        Vec unit = vec::zero(run.ctx.suspended().small.space.dim(0));
        unit[idx] = Rational(1);
        const Vec rep = run.ctx.suspended().nabla.apply(0, unit);
        ojson entry = ojson::array();
        for (std::size_t t = 0; t < rep.size(); ++t)
            if (!rep[t].is_zero())
                entry.push_back({run.ctx.V0_labels()[t], rep[t].str()});
        legend.push_back({{"variable", run.ctx.v0_labels()[i]}, {"representative", entry}});
    }
    o["tangent_legend"] = legend;
    o["obstruction_directions"] = run.ctx.vm1_labels();

    ojson maps;
    maps["J"] = series_json(run.maps.J, false);
    maps["F"] = series_json(run.maps.F, false);
    maps["projection_identity"] = run.maps.f_projection_identity;
    o["kuranishi_map"] = maps;

    ojson inv;
    inv["series"] = series_json(run.inverse, true);
    inv["linear_part_is_inclusion"] = run.inverse_checks.linear_part_is_inclusion;
    inv["composition_is_identity"] = run.inverse_checks.composition_is_identity;
    inv["membership_identity"] = run.inverse_checks.membership_identity;
    o["formal_inverse"] = inv;

    ojson phis = ojson::array();
    for (std::size_t i = 0; i < run.phis.size(); ++i)
        phis.push_back({{"direction", run.ctx.vm1_labels()[i]},
                        {"series", series_json(run.phis[i], true)}});
    o["obstruction_series"] = phis;

    ojson ck;
    ck["dims"] = run.coalgebra.dims;
    ojson bases = ojson::array();
    for (int len = 0; len <= run.order; ++len) {
        const Matrix& b = run.coalgebra.bases[len];
        ojson cols = ojson::array();
        for (int c = 0; c < b.cols; ++c) {
            ojson col = ojson::array();
            for (int r = 0; r < b.rows; ++r)
                if (!b.at(r, c).is_zero()) {
                    const int widx = run.ctx.even_words()[len][r];
                    col.push_back(
                        {run.ctx.engine().words().word(len, widx).str(
                             run.ctx.engine().gens()),
                         b.at(r, c).str()});
                }
            cols.push_back(col);
        }
        bases.push_back({{"word_length", len}, {"basis", cols}});
    }
    ck["bases"] = bases;
    o["kuranishi_coalgebra"] = ck;

    o["theorem_checks"] = validation_json(run.theorem_report);
    o["ok"] = run.theorem_report.ok() && run.inverse_checks.linear_part_is_inclusion &&
              run.inverse_checks.composition_is_identity &&
              run.inverse_checks.membership_identity && run.maps.f_projection_identity;
    return o;
}

namespace {

bool scalar_array(const ojson& a) {
    for (const auto& v : a)
        if (v.is_structured())
            return false;
    return true;
}

void render(const ojson& j, std::ostringstream& out, int indent) {
    const std::string pad(indent, ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                out << pad << key << ":\n";
                render(value, out, indent + 2);
            } else if (value.is_array() && !scalar_array(value)) {
                out << pad << key << ":\n";
                render(value, out, indent + 2);
            } else if (value.is_array()) {
                out << pad << key << ": " << value.dump() << "\n";
            } else {
                out << pad << key << ": " << value.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_structured()) {
                out << pad << "-\n";
                render(v, out, indent + 2);
            } else {
                out << pad << "- " << v.dump() << "\n";
            }
        }
    } else {
        out << pad << j.dump() << "\n";
    }
}

}  // namespace

std::string render_text(const ojson& j) {
    std::ostringstream out;
    render(j, out, 0);
    return out.str();
}

}  // namespace defq

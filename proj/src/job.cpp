#include "wco/job.hpp"

#include <chrono>
#include <cmath>

#include "wco/sampling.hpp"

namespace wco {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

ordered complex_to_json(cplx v) { return ordered::array({v.real(), v.imag()}); }

ordered vector_to_json(const Eigen::VectorXcd& v) {
    ordered a = ordered::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
    return a;
}

ordered matrix_to_json(const Eigen::MatrixXcd& m) {
    ordered rows = ordered::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered row = ordered::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw JobParseError("complex values must be numbers or [re, im] pairs");
}

Eigen::VectorXcd vector_from_json(const json& j, int expected_size) {
    if (!j.is_array() || static_cast<int>(j.size()) != expected_size)
        throw JobParseError("vector must be an array of length " + std::to_string(expected_size));
    Eigen::VectorXcd v(expected_size);
    for (int i = 0; i < expected_size; ++i) v(i) = complex_from_json(j[i]);
    return v;
}

Eigen::MatrixXcd matrix_from_json(const json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw JobParseError("matrix must have " + std::to_string(rows) + " rows");
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw JobParseError("matrix rows must have " + std::to_string(cols) + " entries");
        for (int k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[k]);
    }
    return m;
}

namespace {

const json& require(const json& obj, const char* key, const char* ctx) {
    if (!obj.is_object() || !obj.contains(key))
        throw JobParseError(std::string(ctx) + " requires field '" + key + "'");
    return obj.at(key);
}

int int_field(const json& obj, const char* key, const char* ctx) {
    const json& v = require(obj, key, ctx);
    if (!v.is_number_integer()) throw JobParseError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

double num_field(const json& obj, const char* key, const char* ctx) {
    const json& v = require(obj, key, ctx);
    if (!v.is_number()) throw JobParseError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

LinearFractionalMap parabolic_map_1d(cplx t) {
    if (t.real() < -1e-12) throw std::domain_error("parabolic parameter needs Re t >= 0");
    LinearFractionalMap phi;
    phi.A = Eigen::MatrixXcd::Constant(1, 1, 2.0 - t);
    phi.B = Eigen::VectorXcd::Constant(1, t);
    phi.C = Eigen::VectorXcd::Constant(1, -std::conj(t));
    phi.d = 2.0 + t;
    phi.ensure_valid();
    return phi;
}

WeightSpec parse_weight(const json& w, const SpaceParams& sp, const LinearFractionalMap& map) {
    if (!w.is_object()) throw JobParseError("weight must be an object");
    const int found = w.contains("kernel") + w.contains("series") +
                      w.contains("normalized_kernel_at_inverse_zero") +
                      w.contains("kernel_at_sigma_zero");
    if (found != 1)
        throw JobParseError(
            "weight needs exactly one of kernel | series | "
            "normalized_kernel_at_inverse_zero | kernel_at_sigma_zero");
    if (w.contains("kernel")) {
        const json& k = w.at("kernel");
        const cplx alpha = complex_from_json(require(k, "alpha", "kernel weight"));
        const BallPoint c{vector_from_json(require(k, "c", "kernel weight"), sp.n)};
        return WeightSpec::kernel(sp.gamma, alpha, c);
    }
    if (w.contains("series")) {
        const json& list = w.at("series");
        if (!list.is_array()) throw JobParseError("series weight must be a coefficient array");
        TruncatedSeries s(sp);
        if (static_cast<int>(list.size()) > s.size())
            throw JobParseError("series weight has more coefficients than the truncated basis");
        for (int i = 0; i < static_cast<int>(list.size()); ++i) s[i] = complex_from_json(list[i]);
        return WeightSpec::series(std::move(s));
    }
    if (w.contains("normalized_kernel_at_inverse_zero")) {
        const cplx lambda = complex_from_json(w.at("normalized_kernel_at_inverse_zero"));
        if (!is_automorphism(map)) throw std::domain_error("map is not an automorphism");
        const auto inv = inverse_map(map);
        const BallPoint a{lfm_apply(*inv, Eigen::VectorXcd::Zero(sp.n))};
        const KernelVector ka = normalized_kernel(sp.gamma, a);
        return WeightSpec::kernel(sp.gamma, lambda * ka.scale, a);
    }
    const cplx alpha = complex_from_json(w.at("kernel_at_sigma_zero"));
    const LinearFractionalMap sigma = adjoint_map(map);
    const BallPoint sig0{lfm_apply(sigma, Eigen::VectorXcd::Zero(sp.n))};
    return WeightSpec::kernel(sp.gamma, alpha, sig0);
}

WcoSymbol parse_operator(const json& op, const SpaceParams& sp) {
    if (!op.is_object()) throw JobParseError("operator must be an object");
    const int found = op.contains("map") + op.contains("moebius") + op.contains("linear") +
                      op.contains("parabolic1d");
    if (found != 1)
        throw JobParseError("operator needs exactly one of map | moebius | linear | parabolic1d");

    LinearFractionalMap map;
    bool parabolic = false;
    if (op.contains("map")) {
        const json& m = op.at("map");
        map.A = matrix_from_json(require(m, "a", "map"), sp.n, sp.n);
        map.B = vector_from_json(require(m, "b", "map"), sp.n);
        map.C = vector_from_json(require(m, "c", "map"), sp.n);
        map.d = complex_from_json(require(m, "d", "map"));
        map.ensure_valid();
    } else if (op.contains("moebius")) {
        map = moebius_involution(BallPoint{vector_from_json(op.at("moebius"), sp.n)});
    } else if (op.contains("linear")) {
        map = LinearFractionalMap::linear(matrix_from_json(op.at("linear"), sp.n, sp.n));
    } else {
        if (sp.n != 1) throw std::domain_error("parabolic family is one-dimensional");
        map = parabolic_map_1d(complex_from_json(op.at("parabolic1d")));
        parabolic = true;
    }

    WeightSpec weight = WeightSpec::kernel(sp.gamma, 1.0, BallPoint::origin(sp.n));
    if (op.contains("weight")) {
        weight = parse_weight(op.at("weight"), sp, map);
    } else if (parabolic) {
        // the family's canonical weight
        const LinearFractionalMap sigma = adjoint_map(map);
        const BallPoint sig0{lfm_apply(sigma, Eigen::VectorXcd::Zero(1))};
        weight = WeightSpec::kernel(sp.gamma, 1.0, sig0);
    }
    return make_wco(sp.gamma, std::move(weight), std::move(map));
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Unitary: return "unitary";
        case Verdict::SelfAdjoint: return "self_adjoint";
        case Verdict::NormalFixedPoint: return "normal_fixed_point";
        case Verdict::NormalLfm: return "normal_lfm";
        case Verdict::None: return "none";
    }
    return "none";
}

ordered eigenlist_to_json(const std::vector<cplx>& v) {
    ordered a = ordered::array();
    for (const cplx& x : v) a.push_back(complex_to_json(x));
    return a;
}

ordered classification_to_json(const Classification& c) {
    ordered j;
    j["verdict"] = verdict_name(c.verdict);
    j["residual"] = c.residual;
    if (c.verdict == Verdict::None) j["reason"] = c.reason;
    if (c.lambda) j["lambda"] = complex_to_json(*c.lambda);
    if (c.a) j["a"] = vector_to_json(c.a->v);
    if (c.c) j["c"] = vector_to_json(c.c->v);
    if (c.linear_part) j["linear_part"] = matrix_to_json(*c.linear_part);
    if (c.p) j["p"] = vector_to_json(c.p->v);
    if (c.alpha) j["alpha"] = complex_to_json(*c.alpha);
    if (!c.map_derivative_eigenvalues.empty())
        j["map_derivative_eigenvalues"] = eigenlist_to_json(c.map_derivative_eigenvalues);
    return j;
}

ordered map_to_json(const LinearFractionalMap& m) {
    ordered j;
    j["a"] = matrix_to_json(m.A);
    j["b"] = vector_to_json(m.B);
    j["c"] = vector_to_json(m.C);
    j["d"] = complex_to_json(m.d);
    return j;
}

ordered weight_to_json(const WeightSpec& w) {
    ordered j;
    switch (w.kind()) {
        case WeightSpec::Kind::Kernel:
            j["kind"] = "kernel";
            j["alpha"] = complex_to_json(w.kernel_scale());
            j["c"] = vector_to_json(w.kernel_base().v);
            break;
        case WeightSpec::Kind::Series: {
            j["kind"] = "series";
            const TruncatedSeries& s = w.series_ref();
            ordered coef = ordered::array();
            for (int i = 0; i < s.size(); ++i) coef.push_back(complex_to_json(s[i]));
            j["coefficients"] = std::move(coef);
            break;
        }
        case WeightSpec::Kind::Product:
            j["kind"] = "product";
            j["left"] = weight_to_json(w.product_left());
            j["right"] = weight_to_json(w.product_right());
            j["inner"] = map_to_json(w.product_inner());
            break;
    }
    return j;
}

constexpr double kIdentityTol = 1e-10;

ordered residual_entry(double residual) {
    ordered j;
    j["residual"] = residual;
    j["pass"] = residual <= kIdentityTol;
    return j;
}

ordered skipped_entry(const std::string& why) {
    ordered j;
    j["skipped"] = why;
    return j;
}

double adjoint_duality_residual(const WcoSymbol& W, const WcoSymbol& adj, int samples,
                                std::uint64_t seed) {
    DetRng rng(seed ^ 0xad701u);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const BallPoint y{rng.ball_point(W.dim(), 0.8)};
        const BallPoint z{rng.ball_point(W.dim(), 0.8)};
        const cplx lhs = wco_apply_to_kernel(W, y, z);            // <W K_y, K_z>
        const cplx rhs = std::conj(wco_apply_to_kernel(adj, z, y));  // <K_y, W' K_z>
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    return worst;
}

ordered run_classify(const JobSpec& job) {
    const ClassifyOptions opts{job.tol.symbol, job.samples};
    ordered j;
    j["unitary"] = classification_to_json(classify_unitary(job.op1, opts));
    j["self_adjoint"] = classification_to_json(classify_self_adjoint(job.op1, opts));
    j["normal_fixed_point"] = classification_to_json(classify_normal_fixed_point(job.op1, opts));
    j["normal_lfm"] = classification_to_json(classify_normal_lfm(job.op1, opts));
    if (job.space.n == 1)
        j["normal_coefficients_1d"] = normal_coefficients_1d(job.op1.map, job.tol.symbol);
    if (job.op2) {
        const AdjointInversePair pr = check_adjoint_inverse_pair(job.op1, *job.op2, opts);
        ordered pj;
        pj["ok"] = pr.ok;
        pj["residual"] = pr.residual;
        if (!pr.ok) pj["reason"] = pr.reason;
        if (pr.lambda) pj["lambda"] = complex_to_json(*pr.lambda);
        if (pr.a) pj["a"] = vector_to_json(pr.a->v);
        j["adjoint_inverse_pair"] = pj;
    }
    return j;
}

ordered run_adjoint(const JobSpec& job) {
    const WcoSymbol adj = wco_adjoint_symbol(job.op1);
    ordered j;
    j["adjoint"] = symbol_to_json(adj);
    j["duality_residual"] = adjoint_duality_residual(job.op1, adj, job.samples, job.seed);
    return j;
}

ordered run_compose(const JobSpec& job) {
    const WcoSymbol P = wco_product(job.op1, *job.op2);
    ordered j;
    j["product"] = symbol_to_json(P);
    j["weight_collapsed_to_kernel"] = P.weight.kind() == WeightSpec::Kind::Kernel;
    return j;
}

ordered run_verify(const JobSpec& job) {
    const WcoSymbol& W = job.op1;
    ordered j;
    const bool aut = is_automorphism(W.map);
    j["is_automorphism"] = aut;
    if (aut) {
        j["two_point_identity"] = residual_entry(check_two_point_identity(W.map, job.samples));
        j["reciprocal_identity"] =
            residual_entry(check_reciprocal_identity(W.map, W.gamma, job.samples));
    } else {
        j["two_point_identity"] = skipped_entry("map is not an automorphism");
        j["reciprocal_identity"] = skipped_entry("map is not an automorphism");
    }

    {
        DetRng rng(job.seed ^ 0x7ab50u);
        double fwd = 0.0, comp = 0.0;
        for (int i = 0; i < 5; ++i) {
            const BallPoint a{rng.ball_point(W.dim(), 0.6)};
            const TransformResiduals r = check_kernel_transform(W.map, W.gamma, a, job.samples);
            fwd = std::max(fwd, r.forward);
            comp = std::max(comp, r.companion);
        }
        j["kernel_transform_forward"] = residual_entry(fwd);
        j["kernel_transform_companion"] = residual_entry(comp);
    }

    try {
        const WcoSymbol adj = wco_adjoint_symbol(W);
        j["adjoint_duality"] =
            residual_entry(adjoint_duality_residual(W, adj, job.samples, job.seed));
    } catch (const std::domain_error& e) {
        j["adjoint_duality"] = skipped_entry(e.what());
    }

    {
        const WcoSymbol P = wco_product(W, W);
        DetRng rng(job.seed ^ 0x90dcu);
        double worst = 0.0;
        for (int i = 0; i < job.samples; ++i) {
            const BallPoint z{rng.ball_point(W.dim(), 0.8)};
            const BallPoint w{rng.ball_point(W.dim(), 0.8)};
            const cplx have = wco_apply_to_kernel(P, z, w);
            const Eigen::VectorXcd pw = lfm_apply(W.map, w.v);
            const cplx want = W.weight.eval(w.v) * W.weight.eval(pw) *
                              kernel_eval(W.gamma, z, BallPoint{lfm_apply(W.map, pw)});
            worst = std::max(worst, std::abs(have - want) / (1.0 + std::abs(want)));
        }
        j["product_law"] = residual_entry(worst);
    }

    bool all = true;
    for (const auto& [key, val] : j.items())
        if (val.is_object() && val.contains("pass") && !val["pass"].get<bool>()) all = false;
    j["all_pass"] = all;
    return j;
}

ordered run_spectrum(const JobSpec& job) {
    const ClassifyOptions opts{job.tol.symbol, job.samples};
    const SpectrumReport rep = spectrum_report(job.op1, job.space, opts);
    ordered j;
    ordered cls;
    cls["unitary"] = classification_to_json(rep.unitary);
    cls["self_adjoint"] = classification_to_json(rep.self_adjoint);
    cls["normal_fixed_point"] = classification_to_json(rep.normal_fixed_point);
    cls["normal_lfm"] = classification_to_json(rep.normal_lfm);
    j["classification"] = cls;
    j["has_exact_spectrum"] = rep.has_exact_spectrum;
    if (rep.has_exact_spectrum) {
        j["exact_eigenvalues"] = eigenlist_to_json(rep.exact_eigenvalues);
        j["zero_is_limit_point"] = rep.zero_is_limit_point;
    }
    if (!rep.map_derivative_eigenvalues.empty())
        j["map_derivative_eigenvalues"] = eigenlist_to_json(rep.map_derivative_eigenvalues);
    j["compression_eigenvalues"] = eigenlist_to_json(rep.compression_eigenvalues);
    if (rep.has_exact_spectrum) {
        j["hausdorff_exact_to_compression"] = rep.hausdorff_exact_to_compression;
        j["hausdorff_compression_to_exact"] = rep.hausdorff_compression_to_exact;
    }
    j["note"] = rep.note;
    return j;
}

ordered run_compress(const JobSpec& job) {
    const Eigen::MatrixXcd M = wco_compress(job.op1, job.space);
    ordered j;
    j["rows"] = static_cast<int>(M.rows());
    j["hermitian_defect"] = (M - M.adjoint()).cwiseAbs().maxCoeff();
    j["normality_defect"] = (M * M.adjoint() - M.adjoint() * M).norm();
    const auto table = BasisTable::get(job.space.n, job.space.degree_cap);
    ordered basis = ordered::array();
    for (int i = 0; i < table->size(); ++i) basis.push_back(table->index(i));
    j["basis"] = std::move(basis);
    j["matrix"] = matrix_to_json(M);
    return j;
}

}  // namespace

ordered symbol_to_json(const WcoSymbol& W) {
    ordered j;
    j["gamma"] = W.gamma;
    j["weight"] = weight_to_json(W.weight);
    j["map"] = map_to_json(W.map);
    return j;
}

JobSpec parse_job(const json& doc, const JobOverrides& ov) {
    if (!doc.is_object()) throw JobParseError("job must be a JSON object");
    JobSpec job;

    const json& cmd = require(doc, "command", "job");
    if (!cmd.is_string()) throw JobParseError("command must be a string");
    job.command = cmd.get<std::string>();
    if (job.command != "classify" && job.command != "adjoint" && job.command != "compose" &&
        job.command != "verify" && job.command != "spectrum" && job.command != "compress")
        throw JobParseError("unknown command '" + job.command + "'");

    const json& sp = require(doc, "space", "job");
    job.space.n = int_field(sp, "n", "space");
    job.space.gamma = num_field(sp, "gamma", "space");
    job.space.degree_cap = sp.contains("degree_cap") ? int_field(sp, "degree_cap", "space") : 15;
    if (ov.degree) job.space.degree_cap = *ov.degree;
    job.space.validate();

    if (doc.contains("tolerances")) {
        const json& t = doc.at("tolerances");
        if (!t.is_object()) throw JobParseError("tolerances must be an object");
        if (t.contains("symbol")) job.tol.symbol = num_field(t, "symbol", "tolerances");
        if (t.contains("matrix")) job.tol.matrix = num_field(t, "matrix", "tolerances");
    }
    if (ov.tol_symbol) job.tol.symbol = *ov.tol_symbol;
    if (ov.tol_matrix) job.tol.matrix = *ov.tol_matrix;
    if (!(job.tol.symbol > 0.0) || !(job.tol.matrix > 0.0))
        throw JobParseError("tolerances must be positive");

    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_integer()) throw JobParseError("seed must be an integer");
        job.seed = s.get<std::uint64_t>();
    }
    if (ov.seed) job.seed = *ov.seed;

    if (doc.contains("samples")) {
        job.samples = int_field(doc, "samples", "job");
        if (job.samples < 1) throw JobParseError("samples must be >= 1");
    }

    job.op1 = parse_operator(require(doc, "operator", "job"), job.space);
    if (doc.contains("operator2")) job.op2 = parse_operator(doc.at("operator2"), job.space);
    if (job.command == "compose" && !job.op2)
        throw JobParseError("compose requires field 'operator2'");
    return job;
}

ordered run_job(const JobSpec& job) {
    const auto t0 = std::chrono::steady_clock::now();
    ordered rep;
    rep["command"] = job.command;
    {
        ordered sp;
        sp["n"] = job.space.n;
        sp["gamma"] = job.space.gamma;
        sp["degree_cap"] = job.space.degree_cap;
        rep["space"] = std::move(sp);
    }
    {
        ordered t;
        t["symbol"] = job.tol.symbol;
        t["matrix"] = job.tol.matrix;
        rep["tolerances"] = std::move(t);
    }
    rep["seed"] = job.seed;
    rep["samples"] = job.samples;
    rep["operator"] = symbol_to_json(job.op1);
    if (job.op2) rep["operator2"] = symbol_to_json(*job.op2);

    if (job.command == "classify") rep["result"] = run_classify(job);
    else if (job.command == "adjoint") rep["result"] = run_adjoint(job);
    else if (job.command == "compose") rep["result"] = run_compose(job);
    else if (job.command == "verify") rep["result"] = run_verify(job);
    else if (job.command == "spectrum") rep["result"] = run_spectrum(job);
    else rep["result"] = run_compress(job);

    const auto t1 = std::chrono::steady_clock::now();
    rep["timing_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

}  // namespace wco

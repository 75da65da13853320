// One line per acceptance criterion: PASS/FAIL, a short summary and the time
// taken against its limit. Exit status is 0 only if every criterion passes.

#include "formring/elementary.hpp"
#include "formring/io.hpp"
#include "formring/witt.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace formring;

namespace {

struct Outcome {
    bool ok = true;
    std::string summary;
};

struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<Outcome()> run;
};

FormContext fctx(const std::string &r, const std::string &l, const std::string &f) {
    return FormContext::parse(r, l, f);
}

Value el(const FormContext &c, const std::string &s) { return parse_element(*c.ring, s); }

const std::vector<GenKind> kScalarKinds = {GenKind::QE, GenKind::QR, GenKind::QL, GenKind::HYP_E};

std::optional<GeneratorSymbol> try_symbol(const FormContext &c, std::size_t n, GenKind k, std::size_t i,
                                          std::size_t j, const Value &a) {
    try {
        return make_symbol(c, n, k, i, j, a);
    } catch (const DomainError &) {
        return std::nullopt;
    }
}

/// A Hermitian block of the kind required by T12 (bar) or T21, built from m.
std::optional<Matrix> hermitian_from(const FormContext &c, const Matrix &m, GenKind k) {
    const Ring &r = *c.ring;
    for (const Value &s : {c.lambda, r.neg(c.lambda), c.lambda_bar(), r.neg(c.lambda_bar())}) {
        Matrix b = m + m.conj_transpose().map([&](const Value &v) { return r.mul(s, v); });
        try {
            make_block_symbol(c, k, b);
            return b;
        } catch (const DomainError &) {
        }
    }
    return std::nullopt;
}

Matrix random_matrix(const Ring &r, std::size_t rows, std::size_t cols, std::mt19937_64 &rng, int size = 2) {
    Matrix m(r.shared_from_this(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, r.random_element(rng, size));
    return m;
}

/// A random word in every generator family, including T12/T21 blocks.
GeneratorWord random_word(const FormContext &c, std::size_t n, std::mt19937_64 &rng, int len) {
    GeneratorWord w(c, n);
    std::uniform_int_distribution<std::size_t> idx(1, n);
    std::uniform_int_distribution<int> pick(0, 5);
    int guard = 0;
    while (static_cast<int>(w.size()) < len && ++guard < 100 * len) {
        int p = pick(rng);
        if (p >= 4) {
            GenKind k = p == 4 ? GenKind::T12 : GenKind::T21;
            if (auto b = hermitian_from(c, random_matrix(*c.ring, n, n, rng), k))
                w.push(make_block_symbol(c, k, *b));
            continue;
        }
        if (auto s = try_symbol(c, n, kScalarKinds[static_cast<std::size_t>(p)], idx(rng), idx(rng),
                                c.ring->random_element(rng)))
            w.push(*s);
    }
    return w;
}

Outcome generator_membership() {
    std::size_t checked = 0;
    for (std::string ring : {"Z/4", "Z/5"})
        for (auto [l, f] : {std::pair<std::string, std::string>{"-1", "max"}, {"1", "min"}}) {
            FormContext c = fctx(ring, l, f);
            auto elems = c.ring->elements();
            for (GenKind k : kScalarKinds)
                for (std::size_t i = 1; i <= 3; ++i)
                    for (std::size_t j = 1; j <= 3; ++j)
                        for (const auto &a : *elems)
                            if (auto s = try_symbol(c, 3, k, i, j, a)) {
                                ++checked;
                                if (!is_gq(c, symbol_matrix(c, 3, *s)))
                                    return {false, std::string(to_string(k)) + " not in GQ over " + ring};
                            }
            // T12/T21 with every value at every position (and its Hermitian partner)
            for (GenKind k : {GenKind::T12, GenKind::T21})
                for (std::size_t p = 0; p < 3; ++p)
                    for (std::size_t q = 0; q < 3; ++q)
                        for (const auto &a : *elems)
                            for (const auto &b : *elems) {
                                Matrix m(c.ring, 3, 3);
                                m.set(p, q, a);
                                if (p != q)
                                    m.set(q, p, b);
                                else if (b != c.ring->zero())
                                    continue;
                                GeneratorSymbol s;
                                try {
                                    s = make_block_symbol(c, k, m);
                                } catch (const DomainError &) {
                                    continue;
                                }
                                ++checked;
                                if (!is_gq(c, symbol_matrix(c, 3, s)))
                                    return {false, std::string(to_string(k)) + " block not in GQ over " + ring};
                            }
        }
    return {true, std::to_string(checked) + " generators in GQ"};
}

Outcome splitting_law() {
    std::size_t checked = 0;
    for (auto [l, f] : {std::pair<std::string, std::string>{"-1", "max"}, {"1", "min"}, {"1", "max"}}) {
        FormContext c = fctx("Z/4", l, f);
        auto elems = c.ring->elements();
        for (GenKind k : kScalarKinds)
            for (std::size_t i = 1; i <= 3; ++i)
                for (std::size_t j = 1; j <= 3; ++j)
                    for (const auto &x : *elems)
                        for (const auto &y : *elems) {
                            auto sx = try_symbol(c, 3, k, i, j, x), sy = try_symbol(c, 3, k, i, j, y),
                                 sxy = try_symbol(c, 3, k, i, j, c.ring->add(x, y));
                            if (!sx || !sy || !sxy)
                                continue;
                            ++checked;
                            if (symbol_matrix(c, 3, *sx) * symbol_matrix(c, 3, *sy) != symbol_matrix(c, 3, *sxy))
                                return {false, std::string(to_string(k)) + " fails to split"};
                        }
    }
    return {true, std::to_string(checked) + " pairs split exactly"};
}

Outcome four_conditions() {
    std::mt19937_64 rng(3);
    std::size_t total = 0, printed_differs = 0;
    for (auto c : {fctx("Z/4", "-1", "max"), fctx("Z/5", "1", "min"), fctx("hyp(Z/5)", "(1,1)", "max"),
                   fctx("trunc(Z/4,2)", "-1", "max")})
        for (int k = 0; k < 260; ++k) {
            std::size_t n = 2 + static_cast<std::size_t>(k % 2);
            Matrix g = random_word(c, n, rng, 6).eval();
            QuadraticReport q = is_lambda_quadratic(c, g);
            ++total;
            if (q.condition2_literal != q.conditions[1])
                ++printed_differs;
            if (!q.agree || q.verdict != Verdict::True)
                return {false, "disagreement over " + c.ring->describe() + ": " + q.diagnostic};
        }
    return {true, std::to_string(total) + " elements, all four agree; the printed reading of condition (2) differs on " +
                      std::to_string(printed_differs)};
}

Outcome transvections() {
    std::size_t total = 0;
    for (auto c : {fctx("Z/5", "-1", "max"), fctx("Z/4", "1", "max"), fctx("hyp(Z/3)", "(1,1)", "max"),
                   fctx("trunc(Z/3,1)", "-1", "max")}) {
        std::mt19937_64 rng(41);
        const Ring &r = *c.ring;
        for (int k = 0; k < 200; ++k) {
            GeneratorWord eps = random_word(c, 3, rng, 3);
            eps.symbols().erase(std::remove_if(eps.symbols().begin(), eps.symbols().end(),
                                               [](const GeneratorSymbol &s) { return s.block.has_value(); }),
                                eps.symbols().end());
            Matrix e = eps.eval();
            Matrix v = e * Matrix::unit_vector(c.ring, 6, 0);
            std::optional<Matrix> w;
            for (int tries = 0; tries < 400 && !w; ++tries) {
                Matrix cand = random_matrix(r, 6, 1, rng, 1);
                if (r.is_zero(inner(c, v, cand)) && r.is_zero(inner(c, cand, cand)))
                    w = cand;
            }
            if (!w) { // isotropic u in the first half, moved by eps
                Matrix u = random_matrix(r, 6, 1, rng, 1);
                for (std::size_t i = 3; i < 6; ++i)
                    u.set(i, 0, r.zero());
                w = e * u;
            }
            Certificate cert = factor_transvection(eps, *w);
            if (!cert.verify() || cert.word.eval() != Matrix::identity(c.ring, 6) + m_form(c, v, *w))
                return {false, "certificate mismatch over " + r.describe()};
            ++total;
        }
    }
    return {true, std::to_string(total) + " certificates verified"};
}

Matrix random_invertible(const FormContext &c, std::size_t n, std::mt19937_64 &rng) {
    const Ring &r = *c.ring;
    Matrix a = Matrix::identity(c.ring, n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    auto elems = r.elements();
    for (int k = 0; k < 6; ++k) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j)
            continue;
        Matrix e = Matrix::identity(c.ring, n);
        e.set(i, j, r.random_element(rng));
        a = a * e;
    }
    if (elems)
        for (std::size_t i = 0; i < n; ++i) {
            // scale a column by a random unit
            std::vector<Value> units;
            for (const auto &x : *elems)
                if (r.unit_inverse(x))
                    units.push_back(x);
            Value u = units[std::uniform_int_distribution<std::size_t>(0, units.size() - 1)(rng)];
            for (std::size_t row = 0; row < n; ++row)
                a.set(row, i, r.mul(a(row, i), u));
        }
    return a;
}

Outcome triangular_reduction() {
    std::size_t total = 0;
    std::mt19937_64 rng(5);
    for (auto c : {fctx("Z/5", "-1", "max"), fctx("Z/7", "1", "max"), fctx("hyp(Z/3)", "(1,1)", "max")})
        for (int k = 0; k < 34; ++k) {
            std::size_t n = 2 + static_cast<std::size_t>(k % 2);
            Matrix alpha = random_invertible(c, n, rng);
            auto beta = hermitian_from(c, random_matrix(*c.ring, n, n, rng), GenKind::T12);
            auto gamma = hermitian_from(c, random_matrix(*c.ring, n, n, rng), GenKind::T21);
            if (!beta || !gamma)
                return {false, "no Hermitian blocks over " + c.ring->describe()};
            Matrix A = t21(c, *gamma) * hyperbolic_H(c, alpha) * t12(c, *beta);
            TriangularReduction red = reduce_triangular(c, A);
            if (!red.certificate.verify() || red.alpha != alpha)
                return {false, "reduction failed over " + c.ring->describe()};
            ++total;
        }
    // representatives [a; b, c]_n over R[X]
    auto sz = fctx("Z", "-1", "max");
    Matrix a = Matrix::from_strings(sz.ring, {{"0", "1"}, {"0", "0"}});
    Matrix z = Matrix::zero(sz.ring, 2, 2);
    for (auto rep : {higman_make(sz, a, z, z, 1),
                     higman_make(sz, Matrix::zero(sz.ring, 1, 1), Matrix::from_strings(sz.ring, {{"1"}}),
                                 Matrix::zero(sz.ring, 1, 1), 1)}) {
        Certificate cert = hyperbolic_reduce(rep);
        if (!cert.verify() || cert.target.block(0, 0, rep.r(), rep.r()) != rep.assembled.block(0, 0, rep.r(), rep.r()))
            return {false, "representative reduction altered the corner"};
        ++total;
    }
    return {true, std::to_string(total) + " instances reduced to H(alpha), corner preserved"};
}

Outcome homotopy_laws() {
    auto r = parse_ring("trunc(Z/4,3)");
    auto elems = r->elements();
    std::vector<Value> scalars;
    for (int k = 0; k < 4; ++k)
        scalars.push_back(r->from_int(k));
    std::size_t checks = 0;
    for (const auto &b : *elems) {
        if (plus_eval(*r, b, r->zero()) != degree_zero_part(*r, b) || plus_eval(*r, b, r->one()) != b)
            return {false, "b+(0) or b+(1) law fails at " + r->format(b)};
        for (const auto &x : scalars)
            for (const auto &y : scalars) {
                ++checks;
                if (plus_eval(*r, plus_eval(*r, b, x), y) != plus_eval(*r, b, r->mul(x, y)))
                    return {false, "composition law fails at " + r->format(b)};
            }
    }
    auto c = fctx("poly(Z/4,Y)", "-1", "max");
    std::mt19937_64 rng(6);
    for (int k = 0; k < 100; ++k) {
        Matrix a = random_word(c, 2, rng, 3).eval(), b = random_word(c, 2, rng, 3).eval();
        Value x = c.ring->from_int(k % 4);
        if (matrix_plus_eval(a * b, x) != matrix_plus_eval(a, x) * matrix_plus_eval(b, x))
            return {false, "plus-evaluation is not multiplicative"};
    }
    return {true, std::to_string(elems->size()) + " elements, " + std::to_string(checks) +
                      " composition checks, 100 matrix pairs"};
}

Outcome dilation_telescoping() {
    auto c = fctx("poly(Z/6,Y)", "-1", "max");
    Cover cover = parse_cover(c.ring, "3^1,4^1");
    std::mt19937_64 rng(7);
    std::vector<Matrix> alphas = {gen(c, GenKind::QE, 1, 2, el(c, "Y"), 3).matrix};
    std::uniform_int_distribution<std::size_t> idx(1, 3);
    std::uniform_int_distribution<int> coef(1, 5), deg(1, 2), kind(0, 2);
    while (alphas.size() < 51) {
        GeneratorWord w(c, 3);
        while (w.size() < 2) {
            std::size_t i = idx(rng), j = idx(rng);
            GenKind k = kind(rng) == 0 ? GenKind::QE : kind(rng) == 1 ? GenKind::QR : GenKind::QL;
            Value a = c.ring->mul(c.ring->from_int(coef(rng)), c.ring->pow(el(c, "Y"), deg(rng)));
            if (auto s = try_symbol(c, 3, k, i, j, a))
                w.push(*s);
        }
        alphas.push_back(w.eval());
    }
    std::size_t certified = 0;
    for (const auto &a : alphas) {
        TelescopeResult t = telescope_patch(c, a, cover);
        Matrix prod = Matrix::identity(c.ring, 6);
        for (const auto &f : t.factors)
            prod = prod * f;
        if (!t.product_matches || prod != a)
            return {false, "telescope product differs from alpha"};
        LocalGlobalResult g = local_global_drive(c, a);
        if (g.verdict != Verdict::True || !g.certificate || !g.certificate->verify())
            return {false, "local-global drive gave " + std::string(to_string(g.verdict)) + " after " +
                               std::to_string(certified) + " successes"};
        ++certified;
    }
    // dilation over the localization at 2
    auto cs = fctx("loc(poly(Z,Y),2)", "-1", "max");
    GeneratorWord w(cs, 3, {make_symbol(cs, 3, GenKind::QE, 1, 2, el(cs, "Y/2")),
                            make_symbol(cs, 3, GenKind::QR, 1, 2, el(cs, "Y^2/4"))});
    DilationResult d = dilate(w);
    if (!d.certificate.verify() || d.l != 1)
        return {false, "dilation certificate failed"};
    return {true, std::to_string(certified) + " alphas telescoped and certified; dilation l=" + std::to_string(d.l)};
}

Outcome witt_machinery() {
    std::mt19937_64 rng(8);
    std::size_t steps = 0;
    for (std::string d : {"Z", "Z/4", "Z/9"}) {
        auto r = parse_ring(d);
        std::uniform_int_distribution<std::int64_t> tr(1, 6);
        for (int k = 0; k < 500; ++k) {
            std::int64_t t = tr(rng), rr = std::uniform_int_distribution<std::int64_t>(1, t)(rng);
            Coeffs p;
            for (std::int64_t i = 0; i <= t; ++i)
                p.push_back(r->random_element(rng, 4));
            p = truncate(*r, p, t);
            FactorStep s = witt_factor_step(*r, p, rr, t);
            if (!s.q.empty() && static_cast<std::int64_t>(s.q.size()) - 1 >= t - rr)
                return {false, "deg Q >= t - r over " + d};
            auto shift = [&](const Coeffs &c, std::int64_t by) {
                Coeffs f(static_cast<std::size_t>(by), r->zero());
                f[0] = r->one();
                f.insert(f.end(), c.begin(), c.end());
                return truncate(*r, f, t);
            };
            if (series_mul(*r, shift({s.head}, rr), shift(s.q, rr + 1), t) != shift(p, rr))
                return {false, "factor identity fails over " + d};
            ++steps;
        }
        for (std::int64_t t = 1; t <= 6; ++t)
            for (int k = 0; k < 20; ++k) {
                WittCoordinates w{r, t, {}};
                for (std::int64_t i = 0; i < t; ++i)
                    w.a.push_back(r->random_element(rng, 3));
                Coeffs f = witt_recompose(w);
                if (witt_decompose(r, f, t).a != w.a)
                    return {false, "decompose(recompose) is not the identity over " + d};
                if (ghost_vector(r, f, t) != ghost_from_coordinates(w))
                    return {false, "ghost cross-identity fails over " + d};
            }
    }
    return {true, std::to_string(steps) + " factor steps; round trips and ghost identity for t <= 6"};
}

Outcome torsion_scans() {
    std::ostringstream s;
    struct Case {
        const char *ring;
        std::int64_t k;
    };
    for (auto [d, k] : {Case{"Z/5", 2}, Case{"Z/7", 3}, Case{"Z/9", 2}}) {
        std::uint64_t cases = 0, bad = 0;
        for (std::int64_t t = 1; t <= 2; ++t) {
            TorsionScan sc = torsion_scan(*parse_ring(d), k, t);
            cases += sc.cases;
            bad += sc.counterexamples.size();
        }
        if (bad)
            return {false, std::to_string(bad) + " counterexamples over " + d};
        s << d << " k=" << k << ": 0/" << cases << "; ";
    }
    std::string out = s.str();
    return {true, out.substr(0, out.size() - 2)};
}

Outcome higman_fixtures() {
    auto sz = fctx("Z", "-1", "max");
    Matrix z1 = Matrix::zero(sz.ring, 1, 1), z2 = Matrix::zero(sz.ring, 2, 2);
    Matrix one = Matrix::from_strings(sz.ring, {{"1"}});
    Matrix nil = Matrix::from_strings(sz.ring, {{"0", "1"}, {"0", "0"}});
    struct Fixture {
        std::string name;
        HigmanRep rep;
    };
    std::vector<Fixture> fx = {{"trivial", higman_make(sz, z1, z1, z1, 1)},
                               {"upper", higman_make(sz, z1, one, z1, 1)},
                               {"lower", higman_make(sz, z1, z1, one, 2)},
                               {"nilpotent 2x2", higman_make(sz, nil, z2, z2, 1)}};
    // over H(Z/5) with lambda != bar(lambda) the two readings separate
    auto hz = fctx("hyp(Z/5)", "(2,3)", "max");
    Matrix hz1 = Matrix::zero(hz.ring, 1, 1);
    fx.push_back({"upper over H(Z/5)", higman_make(hz, hz1, Matrix::from_strings(hz.ring, {{"(1,3)"}}), hz1, 1)});
    fx.push_back({"lower over H(Z/5)", higman_make(hz, hz1, hz1, Matrix::from_strings(hz.ring, {{"(1,2)"}}), 1)});
    std::ostringstream s;
    for (auto &f : fx) {
        bool a = higman_validate(f.rep, HermitianMode::A).verdict == Verdict::True;
        bool b = higman_validate(f.rep, HermitianMode::B).verdict == Verdict::True;
        if (!a && !b)
            return {false, f.name + " validates under neither mode"};
        if (f.name == "trivial" && !(a && b))
            return {false, "trivial fixture must validate under both modes"};
        if (is_lambda_quadratic(f.rep.poly, f.rep.assembled).verdict != Verdict::True)
            return {false, f.name + " is not Lambda-quadratic over R[X]"};
        s << f.name << (a && b ? " (A,B)" : a ? " (A)" : " (B)") << "; ";
    }
    std::string out = s.str();
    return {true, out.substr(0, out.size() - 2)};
}

Outcome unipotent_end_to_end() {
    auto c = fctx("poly(Z/5,Y)", "-1", "max");
    Matrix N = gen(c, GenKind::QE, 1, 2, el(c, "Y"), 3).matrix - Matrix::identity(c.ring, 6);
    if (!(N * N).is_zero())
        return {false, "fixture is not square-zero"};
    UnipotentReport rep = unipotent_reduce_graded(c, N, 2);
    if (rep.verdict != Verdict::True || !rep.certificate)
        return {false, "driver returned " + std::string(to_string(rep.verdict))};
    auto path = std::filesystem::temp_directory_path() / "formring_acceptance_cert.json";
    write_text_file(path, certificate_to_json(*rep.certificate).dump(1));
    Certificate back = certificate_from_json(parse_json(read_text_file(path), "certificate"));
    std::filesystem::remove(path);
    Matrix goal = Matrix::identity(c.ring, 6) +
                  N.map([&](const Value &v) { return degree_zero_part(*c.ring, v); });
    if (!back.verify() || back.target != goal)
        return {false, "re-read certificate does not verify"};
    return {true, "word of length " + std::to_string(back.word.size()) + " carries I+N to I+N_0; re-verified from file"};
}

} // namespace

int main() {
    std::vector<Criterion> all = {
        {1, "generator membership", 10, generator_membership},
        {2, "splitting law", 10, splitting_law},
        {3, "four-condition equivalence", 60, four_conditions},
        {4, "transvection factorization", 60, transvections},
        {5, "triangular/hyperbolic reduction", 30, triangular_reduction},
        {6, "homotopy laws", 20, homotopy_laws},
        {7, "dilation and telescoping", 60, dilation_telescoping},
        {8, "Witt machinery", 30, witt_machinery},
        {9, "torsion scan", 120, torsion_scans},
        {10, "Higman representatives", 10, higman_fixtures},
        {11, "end-to-end unipotent reduction", 30, unipotent_end_to_end},
    };
    int failed = 0;
    for (auto &c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs <= c.limit;
        bool pass = o.ok && in_time;
        failed += !pass;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", secs, c.limit);
        std::cout << (pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << o.summary << " ("
                  << timing << (in_time ? "" : ", over the limit") << ")" << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
    return failed ? 1 : 0;
}

#include "formring/elementary.hpp"
#include "formring/io.hpp"
#include "formring/witt.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace formring;
using nlohmann::json;

namespace {

// exit protocol
constexpr int kTrue = 0, kFalse = 1, kError = 2, kUnknown = 3;

int code_of(Verdict v) {
    switch (v) {
    case Verdict::True:
        return kTrue;
    case Verdict::False:
        return kFalse;
    default:
        return kUnknown;
    }
}

struct Outcome {
    json report;
    int code = kTrue;
};

struct RingFlags {
    std::string ring, lambda = "-1", form = "max";

    void attach(CLI::App *sub) {
        sub->add_option("--ring", ring, "ring descriptor, e.g. Z/6 or poly(Z/6,Y)");
        sub->add_option("--lambda", lambda, "lambda (default -1)");
        sub->add_option("--form", form, "min, max or gen{...} (default max)");
    }
    FormContext context() const {
        if (ring.empty())
            throw ParseError("--ring is required");
        return make_context(ring, lambda, form);
    }
};

/// A matrix given as a file (with header) or as an inline JSON grid plus --ring.
MatrixFile load_matrix(const std::string &spec, const RingFlags &flags) {
    if (spec.empty())
        throw ParseError("a matrix is required");
    std::string s = spec;
    if (s.front() == '[') {
        FormContext ctx = flags.context();
        Matrix m = matrix_from_json(ctx.ring, parse_json(s, "matrix"));
        if (!m.square() || m.rows() % 2)
            throw DomainError("matrix must be 2n x 2n");
        return {ctx, m.rows() / 2, m};
    }
    return parse_matrix_file(read_text_file(s));
}

GeneratorWord load_word(const std::string &spec, const RingFlags &flags, std::size_t n) {
    if (!spec.empty() && std::filesystem::exists(spec))
        return parse_word_file(read_text_file(spec));
    if (flags.ring.empty())
        throw ParseError("word '" + spec + "' is not a file and --ring is missing");
    if (n == 0)
        throw ParseError("--n is required for an inline word");
    std::string text = spec;
    for (auto &ch : text)
        if (ch == ';')
            ch = '\n';
    return GeneratorWord::parse(flags.context(), n, text);
}

json word_json(const GeneratorWord &w) {
    json lines = json::array();
    std::stringstream ss(w.serialize());
    std::string line;
    while (std::getline(ss, line))
        lines.push_back(line);
    return lines;
}

json certificate_report(const Certificate &c) {
    json j;
    j["claim"] = c.claim == Certificate::Claim::WordEquals ? "equals" : "reduces";
    j["length"] = c.word.size();
    j["word"] = word_json(c.word);
    j["verified"] = c.verify();
    return j;
}

void maybe_write(const std::string &out, const std::string &text) {
    if (!out.empty())
        write_text_file(out, text);
}

std::string verdict_name(Verdict v) { return std::string(to_string(v)); }

Coeffs poly_coeffs(const Ring &r, const std::string &text) {
    return coefficients_of(r, parse_element(r, text));
}

/// The truncation t and base ring for a series given over `ring`.
std::pair<RingPtr, std::int64_t> series_setting(const RingPtr &ring, std::optional<std::int64_t> t) {
    if (ring->kind() == Ring::Kind::Truncated) {
        auto d = parse_descriptor(ring->describe());
        return {ring->base(), t.value_or(d.truncation)};
    }
    if (ring->kind() == Ring::Kind::Poly) {
        if (!t)
            throw ParseError("--t is required for a polynomial ring");
        return {ring->base(), *t};
    }
    throw DomainError("series need a poly or trunc ring, got " + ring->describe());
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"formring: exact computations with quadratic groups over form rings"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    bool timings = false;
    app.add_option("--seed", seed, "random seed (recorded in reports)");
    app.add_flag("--timings", timings, "include wall-clock timings in reports");

    std::string command;
    auto sub = [&](const char *name, const char *help) {
        auto *s = app.add_subcommand(name, help);
        s->callback([&command, name] { command = name; });
        return s;
    };

    RingFlags flags;
    std::string matrix, out, word, grid, kind = "lambda", elem, at, cover, poly, mode = "both", cert_path,
                                              eps, wvec, rep_path;
    std::size_t n = 0, gi = 0, gj = 0;
    int condition = 0, depth = 6, beam = 16, max_degree = 3;
    std::int64_t k = 2, max_l = 64;
    std::optional<std::int64_t> t, l;
    bool inv = false, certify = false;

    auto add_matrix = [&](CLI::App *s) {
        flags.attach(s);
        s->add_option("matrix,--matrix", matrix, "matrix file or inline JSON grid")->required();
    };
    auto add_search = [&](CLI::App *s) {
        s->add_option("--depth", depth, "search word length bound");
        s->add_option("--beam", beam, "search beam width");
        s->add_option("--max-degree", max_degree, "argument degree bound");
    };

    auto *check_gq = sub("check-gq", "is the matrix in GQ(2n, R, Lambda)?");
    add_matrix(check_gq);
    auto *check_quadratic = sub("check-quadratic", "the four Lambda-quadratic conditions");
    add_matrix(check_quadratic);
    check_quadratic->add_option("--condition", condition, "1..4, or 0 for all four");
    auto *check_hermitian = sub("check-hermitian", "is an n x n block (bar-)Lambda-Hermitian?");
    flags.attach(check_hermitian);
    check_hermitian->add_option("--grid", grid, "JSON grid")->required();
    check_hermitian->add_option("--kind", kind, "lambda or lambda-bar");
    auto *gen_cmd = sub("gen", "one elementary generator");
    flags.attach(gen_cmd);
    gen_cmd->add_option("--kind", kind, "QE, QR, QL or HYP_E")->required();
    gen_cmd->add_option("--i", gi)->required();
    gen_cmd->add_option("--j", gj)->required();
    gen_cmd->add_option("--arg", elem, "argument")->required();
    gen_cmd->add_option("--n", n, "half size")->required();
    gen_cmd->add_flag("--inv", inv, "inverted symbol");
    gen_cmd->add_option("-o,--output", out, "write the matrix file here");
    auto *eval_cmd = sub("eval", "evaluate a word");
    flags.attach(eval_cmd);
    eval_cmd->add_option("word", word, "word file, or inline symbols separated by ';'")->required();
    eval_cmd->add_option("--n", n);
    eval_cmd->add_option("-o,--output", out, "write the matrix file here");
    auto *normalize = sub("normalize-graded", "split a word over a graded ring");
    flags.attach(normalize);
    normalize->add_option("word", word)->required();
    normalize->add_option("--n", n);
    auto *transvection = sub("factor-transvection", "word for I + M(eps e_1, w)");
    flags.attach(transvection);
    transvection->add_option("--eps", eps, "word file or inline word for eps (default empty)");
    transvection->add_option("--w", wvec, "JSON column of 2n elements")->required();
    transvection->add_option("--n", n);
    transvection->add_option("-o,--output", out, "write the certificate here");
    auto *reduce = sub("reduce", "triangular reduction to H(alpha), then alpha by column operations");
    add_matrix(reduce);
    reduce->add_option("-o,--output", out, "write the certificate here");
    auto *plus = sub("plus-eval", "b+(a) for an element or a matrix");
    flags.attach(plus);
    plus->add_option("--elem", elem, "element b");
    plus->add_option("--matrix", matrix, "matrix file or inline grid instead of --elem");
    plus->add_option("--at", at, "degree-0 point a")->required();
    auto *dilate_cmd = sub("dilate", "graded dilation over R_s");
    flags.attach(dilate_cmd);
    dilate_cmd->add_option("word", word)->required();
    dilate_cmd->add_option("--n", n);
    dilate_cmd->add_option("--l", l, "fixed exponent");
    dilate_cmd->add_option("--max-l", max_l, "largest exponent tried");
    dilate_cmd->add_option("-o,--output", out, "write the certificate here");
    auto *patch = sub("patch-verify", "telescoping factors for a cover");
    add_matrix(patch);
    patch->add_option("--cover", cover, "e.g. 3^1,4^1")->required();
    patch->add_flag("--certify", certify, "also run the local-global drive");
    add_search(patch);
    patch->add_option("-o,--output", out, "write the certificate here (with --certify)");
    auto *lg = sub("lg-drive", "local-global elementary certificate");
    add_matrix(lg);
    add_search(lg);
    lg->add_option("-o,--output", out, "write the certificate here");
    auto *witt = sub("witt-decompose", "Witt coordinates of a series 1 + X P");
    flags.attach(witt);
    witt->add_option("--poly", poly, "the series")->required();
    witt->add_option("--t", t, "truncation (defaults to the trunc ring's)");
    auto *ghost = sub("ghost", "ghost components of a series");
    flags.attach(ghost);
    ghost->add_option("--poly", poly)->required();
    ghost->add_option("--t", t);
    auto *scan = sub("torsion-scan", "exhaustive check of the k-torsion step");
    flags.attach(scan);
    scan->add_option("--k", k)->required();
    scan->add_option("--t", t)->required();
    auto *hv = sub("higman-validate", "check a representative [a; b, c]_n");
    hv->add_option("rep", rep_path, "representative JSON file")->required();
    hv->add_option("--mode", mode, "A, B or both");
    auto *rh = sub("reduce-hyperbolic", "reduce a representative to H(I - aX)");
    rh->add_option("rep", rep_path)->required();
    rh->add_option("-o,--output", out, "write the certificate here");
    auto *verify = sub("verify", "re-evaluate a certificate");
    verify->add_option("certificate", cert_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }

    auto started = std::chrono::steady_clock::now();
    Outcome res;
    try {
        if (command == "check-gq") {
            MatrixFile mf = load_matrix(matrix, flags);
            bool ok = is_gq(mf.ctx, mf.matrix);
            res.report = {{"header", mf.ctx.header(mf.n)}, {"verdict", ok ? "true" : "false"}};
            res.code = ok ? kTrue : kFalse;
        } else if (command == "check-quadratic") {
            MatrixFile mf = load_matrix(matrix, flags);
            QuadraticReport q = is_lambda_quadratic(mf.ctx, mf.matrix, condition);
            json conds = json::array();
            for (auto v : q.conditions)
                conds.push_back(verdict_name(v));
            res.report = {{"header", mf.ctx.header(mf.n)},
                          {"conditions", conds},
                          {"condition2_printed_reading", verdict_name(q.condition2_literal)},
                          {"agree", q.agree},
                          {"verdict", verdict_name(q.verdict)}};
            if (!q.diagnostic.empty())
                res.report["diagnostic"] = q.diagnostic;
            res.code = code_of(q.verdict);
        } else if (command == "check-hermitian") {
            FormContext ctx = flags.context();
            Matrix b = matrix_from_json(ctx.ring, parse_json(grid, "grid"));
            HermitianKind hk;
            if (kind == "lambda")
                hk = HermitianKind::Lambda;
            else if (kind == "lambda-bar" || kind == "lambdabar")
                hk = HermitianKind::LambdaBar;
            else
                throw ParseError("--kind must be lambda or lambda-bar");
            Verdict v = is_hermitian(ctx, b, hk);
            res.report = {{"kind", kind}, {"verdict", verdict_name(v)}};
            res.code = code_of(v);
        } else if (command == "gen") {
            FormContext ctx = flags.context();
            auto gk = parse_gen_kind(kind);
            if (!gk || *gk == GenKind::T12 || *gk == GenKind::T21)
                throw ParseError("--kind must be QE, QR, QL or HYP_E");
            GeneratorSymbol s = make_symbol(ctx, n, *gk, gi, gj, parse_element(*ctx.ring, elem));
            if (inv)
                s = s.inverse();
            Matrix m = symbol_matrix(ctx, n, s);
            GeneratorWord w(ctx, n, {s});
            res.report = {{"header", ctx.header(n)},
                          {"symbol", word_json(w)},
                          {"matrix", matrix_to_json(m)},
                          {"in_gq", is_gq(ctx, m)}};
            maybe_write(out, format_matrix_file(ctx, m));
        } else if (command == "eval") {
            GeneratorWord w = load_word(word, flags, n);
            Matrix m = w.eval();
            res.report = {{"header", w.context().header(w.n())},
                          {"length", w.size()},
                          {"matrix", matrix_to_json(m)}};
            maybe_write(out, format_matrix_file(w.context(), m));
        } else if (command == "normalize-graded") {
            GeneratorWord w = load_word(word, flags, n);
            GradedSplit sp = graded_normalize(w);
            GeneratorWord joined = sp.conjugate;
            joined.append(sp.residual);
            bool ok = joined.eval() == w.eval();
            res.report = {{"header", w.context().header(w.n())},
                          {"conjugate", word_json(sp.conjugate)},
                          {"residual", word_json(sp.residual)},
                          {"product_matches", ok}};
            res.code = ok ? kTrue : kFalse;
        } else if (command == "factor-transvection") {
            GeneratorWord e = eps.empty() ? GeneratorWord(flags.context(), n) : load_word(eps, flags, n);
            Matrix col = matrix_from_json(e.context().ring, [&] {
                json j = parse_json(wvec, "--w");
                json c = json::array();
                for (auto &x : j)
                    c.push_back(json::array({x}));
                return c;
            }());
            Certificate cert = factor_transvection(e, col);
            res.report = {{"header", e.context().header(e.n())}, {"certificate", certificate_report(cert)}};
            res.code = cert.verify() ? kTrue : kFalse;
            maybe_write(out, certificate_to_json(cert).dump(1) + "\n");
        } else if (command == "reduce") {
            MatrixFile mf = load_matrix(matrix, flags);
            TriangularReduction red = reduce_triangular(mf.ctx, mf.matrix);
            Certificate cert = red.certificate;
            res.report = {{"header", mf.ctx.header(mf.n)}, {"alpha", matrix_to_json(red.alpha)}};
            if (auto lin = linear_reduce(mf.ctx, red.alpha)) {
                GeneratorWord full = cert.word;
                full.append(*lin);
                cert = make_reduction_certificate(mf.matrix, full, Matrix::identity(mf.ctx.ring, 2 * mf.n));
                res.report["alpha_reduced"] = true;
            } else {
                res.report["alpha_reduced"] = false;
            }
            res.report["certificate"] = certificate_report(cert);
            res.code = cert.verify() ? kTrue : kFalse;
            maybe_write(out, certificate_to_json(cert).dump(1) + "\n");
        } else if (command == "plus-eval") {
            if (!matrix.empty()) {
                MatrixFile mf = load_matrix(matrix, flags);
                Matrix m = matrix_plus_eval(mf.matrix, parse_element(*mf.ctx.ring, at));
                res.report = {{"header", mf.ctx.header(mf.n)}, {"matrix", matrix_to_json(m)}};
            } else {
                if (elem.empty())
                    throw ParseError("give --elem or --matrix");
                FormContext ctx = flags.context();
                const Ring &r = *ctx.ring;
                Value v = plus_eval(r, parse_element(r, elem), parse_element(r, at));
                res.report = {{"ring", r.describe()}, {"value", r.format(v)}};
            }
        } else if (command == "dilate") {
            GeneratorWord w = load_word(word, flags, n);
            DilationResult d = dilate(w, l, max_l);
            res.report = {{"header", w.context().header(w.n())},
                          {"l", d.l},
                          {"pullback", matrix_to_json(d.pullback)},
                          {"certificate", certificate_report(d.certificate)}};
            res.code = d.certificate.verify() ? kTrue : kFalse;
            maybe_write(out, certificate_to_json(d.certificate).dump(1) + "\n");
        } else if (command == "patch-verify") {
            MatrixFile mf = load_matrix(matrix, flags);
            RingPtr r0 = mf.ctx.ring;
            Cover cv = parse_cover(r0, cover);
            TelescopeResult tr = telescope_patch(mf.ctx, mf.matrix, cv);
            json factors = json::array();
            for (auto &f : tr.factors)
                factors.push_back(matrix_to_json(f));
            res.report = {{"header", mf.ctx.header(mf.n)},
                          {"cover", cv.str()},
                          {"factors", factors},
                          {"product_matches", tr.product_matches}};
            res.code = tr.product_matches ? kTrue : kFalse;
            if (certify && tr.product_matches) {
                LocalGlobalResult g = local_global_drive(mf.ctx, mf.matrix, {depth, beam, max_degree});
                res.report["local_global"] = verdict_name(g.verdict);
                if (g.certificate) {
                    res.report["certificate"] = certificate_report(*g.certificate);
                    maybe_write(out, certificate_to_json(*g.certificate).dump(1) + "\n");
                }
                res.code = code_of(g.verdict);
            }
        } else if (command == "lg-drive") {
            MatrixFile mf = load_matrix(matrix, flags);
            LocalGlobalResult g = local_global_drive(mf.ctx, mf.matrix, {depth, beam, max_degree});
            json pieces = json::array();
            for (auto &p : g.pieces) {
                json pj = {{"ideal", p.ideal}, {"idempotent", mf.ctx.ring->format(p.idempotent)}, {"found", bool(p.word)}};
                if (p.word)
                    pj["word"] = word_json(*p.word);
                pieces.push_back(pj);
            }
            res.report = {{"header", mf.ctx.header(mf.n)},
                          {"verdict", verdict_name(g.verdict)},
                          {"cover", g.cover.str()},
                          {"pieces", pieces}};
            if (!g.note.empty())
                res.report["note"] = g.note;
            if (g.certificate) {
                res.report["certificate"] = certificate_report(*g.certificate);
                maybe_write(out, certificate_to_json(*g.certificate).dump(1) + "\n");
            }
            res.code = code_of(g.verdict);
        } else if (command == "witt-decompose" || command == "ghost") {
            FormContext ctx = flags.context();
            auto [base, tt] = series_setting(ctx.ring, t);
            Coeffs f = poly_coeffs(*ctx.ring, poly);
            WittCoordinates w = witt_decompose(base, f, tt);
            res.report = {{"ring", ctx.ring->describe()}, {"t", tt}, {"series", poly}};
            if (command == "witt-decompose") {
                json a = json::array();
                for (auto &x : w.a)
                    a.push_back(base->format(x));
                res.report["coordinates"] = a;
                res.code = witt_recompose(w) == truncate(*base, f, tt) ? kTrue : kFalse;
            } else {
                auto g = ghost_vector(base, f, tt);
                auto cross = ghost_from_coordinates(w);
                json a = json::array();
                for (auto &x : g)
                    a.push_back(base->format(x));
                res.report["ghost"] = a;
                res.report["cross_identity"] = g == cross;
                res.code = g == cross ? kTrue : kFalse;
            }
        } else if (command == "torsion-scan") {
            FormContext ctx = flags.context();
            TorsionScan s = torsion_scan(*ctx.ring, k, *t);
            json ce = json::array();
            for (auto &[rr, p] : s.counterexamples) {
                json pj = json::array();
                for (auto &x : p)
                    pj.push_back(ctx.ring->format(x));
                ce.push_back({{"r", rr}, {"P", pj}});
            }
            res.report = {{"ring", ctx.ring->describe()},
                          {"k", k},
                          {"t", *t},
                          {"cases", s.cases},
                          {"hypothesis_holds", s.hypothesis_holds},
                          {"counterexamples", ce},
                          {"summary", std::to_string(s.counterexamples.size()) + " counterexamples / " +
                                          std::to_string(s.cases) + " cases"}};
            res.code = s.counterexamples.empty() ? kTrue : kFalse;
        } else if (command == "higman-validate") {
            HigmanRep rep = rep_from_json(parse_json(read_text_file(rep_path), "representative"));
            std::vector<HermitianMode> modes;
            if (mode == "both")
                modes = {HermitianMode::A, HermitianMode::B};
            else
                modes = {parse_hermitian_mode(mode)};
            json per = json::object();
            Verdict best = Verdict::False;
            for (auto m : modes) {
                HigmanValidation v = higman_validate(rep, m);
                per[std::string(to_string(m))] = {{"verdict", verdict_name(v.verdict)},
                                                  {"violations", v.violations},
                                                  {"lambda_quadratic", verdict_name(v.quadratic.verdict)}};
                if (v.verdict == Verdict::True)
                    best = Verdict::True;
                else if (v.verdict == Verdict::Unknown && best == Verdict::False)
                    best = Verdict::Unknown;
            }
            res.report = {{"r", rep.r()}, {"n", rep.n}, {"assembled", matrix_to_json(rep.assembled)}, {"modes", per},
                          {"verdict", verdict_name(best)}};
            res.code = code_of(best);
        } else if (command == "reduce-hyperbolic") {
            HigmanRep rep = rep_from_json(parse_json(read_text_file(rep_path), "representative"));
            Certificate cert = hyperbolic_reduce(rep);
            res.report = {{"header", cert.context().header(cert.word.n())},
                          {"target", matrix_to_json(cert.target)},
                          {"certificate", certificate_report(cert)}};
            res.code = cert.verify() ? kTrue : kFalse;
            maybe_write(out, certificate_to_json(cert).dump(1) + "\n");
        } else if (command == "verify") {
            Certificate cert = certificate_from_json(parse_json(read_text_file(cert_path), "certificate"));
            bool ok = cert.verify();
            res.report = {{"header", cert.context().header(cert.word.n())},
                          {"length", cert.word.size()},
                          {"verdict", ok ? "true" : "false"}};
            res.code = ok ? kTrue : kFalse;
        } else {
            std::cerr << "error: unknown command\n";
            return kError;
        }
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const DomainError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    res.report["command"] = command;
    res.report["seed"] = seed;
    if (!res.report.contains("verdict"))
        res.report["verdict"] = res.code == kTrue ? "true" : res.code == kFalse ? "false" : "unknown";
    if (timings)
        res.report["seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::cout << res.report.dump(2) << "\n";
    return res.code;
}

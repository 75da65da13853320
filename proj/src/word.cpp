#include "formring/word.hpp"

#include <json.hpp>

#include <sstream>

namespace formring {

std::string_view to_string(GenKind k) {
    switch (k) {
    case GenKind::QE:
        return "QE";
    case GenKind::QR:
        return "QR";
    case GenKind::QL:
        return "QL";
    case GenKind::HYP_E:
        return "HYP_E";
    case GenKind::T12:
        return "T12";
    case GenKind::T21:
        return "T21";
    }
    return "?";
}

std::optional<GenKind> parse_gen_kind(std::string_view s) {
    for (GenKind k : {GenKind::QE, GenKind::QR, GenKind::QL, GenKind::HYP_E, GenKind::T12,
                      GenKind::T21})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

GeneratorSymbol make_symbol(const FormContext &ctx, std::size_t n, GenKind kind, std::size_t i,
                            std::size_t j, Value a) {
    if (kind == GenKind::T12 || kind == GenKind::T21)
        throw DomainError("T12/T21 take a block argument");
    if (i < 1 || j < 1 || i > n || j > n)
        throw DomainError(std::string(to_string(kind)) + " indices out of range 1.." +
                          std::to_string(n));
    const Ring &r = *ctx.ring;
    a = r.normalize(a);
    if ((kind == GenKind::QE || kind == GenKind::HYP_E) && i == j)
        throw DomainError(std::string(to_string(kind)) + " needs i != j");
    if (i == j && kind == GenKind::QR) {
        if (a != r.neg(r.mul(ctx.lambda_bar(), r.involve(a))))
            throw DomainError("QR_ii(a) needs a = -bar(lambda) bar(a); a = " + r.format(a));
        if (ctx.form.contains(a, true) == Verdict::False)
            throw DomainError("QR_ii(a) needs a in bar(Lambda); a = " + r.format(a));
    }
    if (i == j && kind == GenKind::QL) {
        if (a != r.neg(r.mul(ctx.lambda, r.involve(a))))
            throw DomainError("QL_ii(a) needs a = -lambda bar(a); a = " + r.format(a));
        if (ctx.form.contains(a, false) == Verdict::False)
            throw DomainError("QL_ii(a) needs a in Lambda; a = " + r.format(a));
    }
    GeneratorSymbol s;
    s.kind = kind;
    s.i = i;
    s.j = j;
    s.arg = std::move(a);
    return s;
}

GeneratorSymbol make_block_symbol(const FormContext &ctx, GenKind kind, Matrix block) {
    if (kind != GenKind::T12 && kind != GenKind::T21)
        throw DomainError("only T12/T21 take a block argument");
    if (!block.square())
        throw DomainError("T12/T21 block must be square");
    auto herm = kind == GenKind::T12 ? HermitianKind::LambdaBar : HermitianKind::Lambda;
    if (is_hermitian(ctx, block, herm) == Verdict::False)
        throw DomainError(std::string(to_string(kind)) + " block is not " +
                          (kind == GenKind::T12 ? "bar-Lambda" : "Lambda") +
                          "-Hermitian: " + block.str());
    GeneratorSymbol s;
    s.kind = kind;
    s.block = std::move(block);
    return s;
}

Value effective_arg(const FormContext &ctx, const GeneratorSymbol &s) {
    return s.inverted ? ctx.ring->neg(s.arg) : s.arg;
}

Matrix effective_block(const GeneratorSymbol &s) { return s.inverted ? -*s.block : *s.block; }

std::vector<SparseEntry> symbol_entries(const FormContext &ctx, std::size_t n,
                                        const GeneratorSymbol &s) {
    const Ring &r = *ctx.ring;
    std::vector<SparseEntry> out;
    auto put = [&](std::size_t row, std::size_t col, Value v) {
        if (!r.is_zero(v))
            out.push_back({row, col, std::move(v)});
    };
    if (s.kind == GenKind::T12 || s.kind == GenKind::T21) {
        Matrix b = effective_block(s);
        if (b.rows() != n)
            throw DomainError("block size does not match n");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (s.kind == GenKind::T12)
                    put(i, n + j, b(i, j));
                else
                    put(n + i, j, b(i, j));
            }
        return out;
    }
    Value a = effective_arg(ctx, s);
    Value abar = r.involve(a);
    std::size_t i = s.i - 1, j = s.j - 1;
    switch (s.kind) {
    case GenKind::QE:
    case GenKind::HYP_E:
        put(i, j, a);
        put(n + j, n + i, r.neg(abar));
        break;
    case GenKind::QR:
        put(i, n + j, a);
        if (i != j)
            put(j, n + i, r.neg(r.mul(ctx.lambda_bar(), abar)));
        break;
    case GenKind::QL:
        put(n + i, j, a);
        if (i != j)
            put(n + j, i, r.neg(r.mul(ctx.lambda, abar)));
        break;
    default:
        break;
    }
    return out;
}

Matrix symbol_matrix(const FormContext &ctx, std::size_t n, const GeneratorSymbol &s) {
    Matrix m = Matrix::identity(ctx.ring, 2 * n);
    for (auto &e : symbol_entries(ctx, n, s))
        m.set(e.row, e.col, m.ring()->add(m(e.row, e.col), e.value));
    return m;
}

void apply_right(Matrix &m, const std::vector<SparseEntry> &g) {
    // m * (I + E): column c gains sum over entries (r, c, v) of m[:, r] * v
    const Ring &r = *m.ring();
    std::vector<std::pair<std::size_t, std::vector<Value>>> deltas;
    for (const auto &e : g) {
        std::vector<Value> col(m.rows());
        for (std::size_t k = 0; k < m.rows(); ++k)
            col[k] = r.mul(m(k, e.row), e.value);
        deltas.emplace_back(e.col, std::move(col));
    }
    for (auto &[c, col] : deltas)
        for (std::size_t k = 0; k < m.rows(); ++k)
            if (!r.is_zero(col[k]))
                m.set(k, c, r.add(m(k, c), col[k]));
}

void apply_left(const std::vector<SparseEntry> &g, Matrix &m) {
    // (I + E) * m: row r gains v * m[c, :]
    const Ring &r = *m.ring();
    std::vector<std::pair<std::size_t, std::vector<Value>>> deltas;
    for (const auto &e : g) {
        std::vector<Value> row(m.cols());
        for (std::size_t k = 0; k < m.cols(); ++k)
            row[k] = r.mul(e.value, m(e.col, k));
        deltas.emplace_back(e.row, std::move(row));
    }
    for (auto &[rr, row] : deltas)
        for (std::size_t k = 0; k < m.cols(); ++k)
            if (!r.is_zero(row[k]))
                m.set(rr, k, r.add(m(rr, k), row[k]));
}

void GeneratorWord::append(const GeneratorWord &w) {
    if (w.n_ != n_)
        throw DomainError("cannot concatenate words of different sizes");
    symbols_.insert(symbols_.end(), w.symbols_.begin(), w.symbols_.end());
}

Matrix GeneratorWord::eval() const {
    Matrix m = Matrix::identity(ctx_.ring, 2 * n_);
    for (const auto &s : symbols_)
        apply_right(m, symbol_entries(ctx_, n_, s));
    return m;
}

GeneratorWord GeneratorWord::inverse() const {
    GeneratorWord w(ctx_, n_);
    for (auto it = symbols_.rbegin(); it != symbols_.rend(); ++it)
        w.push(it->inverse());
    return w;
}

std::string GeneratorWord::serialize() const {
    std::ostringstream os;
    for (const auto &s : symbols_) {
        os << to_string(s.kind);
        if (s.block) {
            os << " " << nlohmann::json(s.block->to_strings()).dump();
        } else {
            os << " " << s.i << " " << s.j << " " << ctx_.ring->format(s.arg);
        }
        if (s.inverted)
            os << " INV";
        os << "\n";
    }
    return os.str();
}

GeneratorWord GeneratorWord::parse(const FormContext &ctx, std::size_t n, std::string_view text) {
    GeneratorWord w(ctx, n);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        bool inverted = false;
        if (tok.size() > 1 && tok.back() == "INV") {
            inverted = true;
            tok.pop_back();
        }
        auto fail = [&](const std::string &msg) -> ParseError {
            return ParseError("word line " + std::to_string(lineno) + ": " + msg);
        };
        auto kind = parse_gen_kind(tok.at(0));
        if (!kind)
            throw fail("unknown generator '" + tok[0] + "'");
        GeneratorSymbol s;
        try {
            if (*kind == GenKind::T12 || *kind == GenKind::T21) {
                std::string rest;
                for (std::size_t k = 1; k < tok.size(); ++k)
                    rest += tok[k];
                auto grid = nlohmann::json::parse(rest).get<std::vector<std::vector<std::string>>>();
                s = make_block_symbol(ctx, *kind, Matrix::from_strings(ctx.ring, grid));
            } else {
                if (tok.size() < 4)
                    throw fail("expected '<KIND> i j <element>'");
                std::string elem;
                for (std::size_t k = 3; k < tok.size(); ++k)
                    elem += tok[k];
                s = make_symbol(ctx, n, *kind, std::stoul(tok[1]), std::stoul(tok[2]),
                                parse_element(*ctx.ring, elem));
            }
        } catch (const ParseError &e) {
            throw fail(e.what());
        } catch (const DomainError &e) {
            throw fail(e.what());
        } catch (const nlohmann::json::exception &e) {
            throw fail(e.what());
        } catch (const std::invalid_argument &) {
            throw fail("bad index");
        }
        s.inverted = inverted;
        w.push(std::move(s));
    }
    return w;
}

bool Certificate::verify() const {
    Matrix e = word.eval();
    if (claim == Claim::WordEquals)
        return e == target;
    if (!subject)
        return false;
    return *subject * e == target;
}

Certificate make_equals_certificate(GeneratorWord w, Matrix target) {
    return Certificate{Certificate::Claim::WordEquals, std::nullopt, std::move(target),
                       std::move(w)};
}

Certificate make_reduction_certificate(Matrix subject, GeneratorWord w, Matrix target) {
    return Certificate{Certificate::Claim::Reduces, std::move(subject), std::move(target),
                       std::move(w)};
}

} // namespace formring

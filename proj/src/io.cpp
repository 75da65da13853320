#include "formring/io.hpp"

#include <fstream>
#include <sstream>

namespace formring {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
    return b == std::string_view::npos ? std::string() : std::string(s.substr(b, e - b + 1));
}

std::size_t parse_size(const std::string &s, const char *what) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos != s.size() || v < 0)
        throw ParseError(std::string("bad ") + what + " '" + s + "'");
    return static_cast<std::size_t>(v);
}

} // namespace

FormContext make_context(std::string_view ring, std::string_view lambda, std::string_view form) {
    FormContext ctx = FormContext::parse(ring, lambda, form);
    LambdaCheck lc = lambda_check(*ctx.ring, ctx.lambda);
    if (!lc.ok)
        throw DomainError("lambda_check failed: " + lc.reason);
    return ctx;
}

Header parse_header(std::string_view text) {
    std::string ring, lambda = "-1", form = "max";
    std::optional<std::size_t> n;
    bool has_ring = false;
    std::string s(text);
    std::stringstream in(s);
    std::string field;
    while (std::getline(in, field, ';')) {
        field = trim(field);
        if (field.empty())
            continue;
        auto eq = field.find('=');
        if (eq == std::string::npos)
            throw ParseError("header field '" + field + "' is not key=value");
        std::string key = trim(field.substr(0, eq)), val = trim(field.substr(eq + 1));
        if (key == "ring") {
            ring = val;
            has_ring = true;
        } else if (key == "lambda") {
            lambda = val;
        } else if (key == "form") {
            form = val;
        } else if (key == "n") {
            n = parse_size(val, "n");
        } else {
            throw ParseError("unknown header field '" + key + "'");
        }
    }
    if (!has_ring)
        throw ParseError("header is missing ring=...");
    return {make_context(ring, lambda, form), n};
}

nlohmann::json parse_json(std::string_view text, std::string_view what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        // count lines up to the failing byte
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            line += text[i] == '\n';
        throw ParseError(std::string(what) + " line " + std::to_string(line) + ": invalid JSON", e.byte);
    }
}

nlohmann::json matrix_to_json(const Matrix &m) { return m.to_strings(); }

Matrix matrix_from_json(const RingPtr &ring, const nlohmann::json &grid) {
    if (!grid.is_array())
        throw ParseError("matrix must be a JSON array of rows");
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto &row = grid[i];
        if (!row.is_array())
            throw ParseError("matrix row " + std::to_string(i + 1) + " is not an array");
        std::vector<std::string> r;
        for (const auto &x : row) {
            if (x.is_string())
                r.push_back(x.get<std::string>());
            else if (x.is_number_integer())
                r.push_back(std::to_string(x.get<long long>()));
            else
                throw ParseError("matrix row " + std::to_string(i + 1) + " has a non-element entry");
        }
        if (!cells.empty() && r.size() != cells.front().size())
            throw ParseError("matrix row " + std::to_string(i + 1) + " has the wrong length");
        cells.push_back(std::move(r));
    }
    try {
        return Matrix::from_strings(ring, cells);
    } catch (const ParseError &e) {
        throw ParseError(std::string("matrix entry: ") + e.what(), e.position());
    }
}

MatrixFile parse_matrix_file(std::string_view text) {
    std::string header;
    nlohmann::json grid;
    std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json j = parse_json(body, "matrix file");
        if (!j.contains("header") || !j.contains("matrix"))
            throw ParseError("matrix file needs \"header\" and \"matrix\"");
        header = j.at("header").get<std::string>();
        grid = j.at("matrix");
    } else {
        auto nl = body.find('\n');
        header = body.substr(0, nl);
        if (!header.empty() && header.front() == '#')
            header.erase(0, 1);
        grid = parse_json(nl == std::string::npos ? std::string_view() : std::string_view(body).substr(nl + 1),
                          "matrix grid");
    }
    Header h = parse_header(header);
    Matrix m = matrix_from_json(h.ctx.ring, grid);
    if (!m.square() || m.rows() % 2)
        throw DomainError("matrix must be 2n x 2n, got " + std::to_string(m.rows()) + " x " +
                          std::to_string(m.cols()));
    std::size_t n = m.rows() / 2;
    if (h.n && *h.n != n)
        throw DomainError("header says n=" + std::to_string(*h.n) + " but the matrix is " +
                          std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
    return {h.ctx, n, m};
}

std::string format_matrix_file(const FormContext &ctx, const Matrix &m) {
    nlohmann::json j;
    j["header"] = ctx.header(m.rows() / 2);
    j["matrix"] = matrix_to_json(m);
    return j.dump(1) + "\n";
}

GeneratorWord parse_word_file(std::string_view text) {
    std::string s(text);
    std::size_t start = s.find_first_not_of(" \t\r\n");
    if (start == std::string::npos || s[start] != '#')
        throw ParseError("word file must start with a '# ring=...' header line");
    std::size_t nl = s.find('\n', start);
    Header h = parse_header(s.substr(start + 1, nl == std::string::npos ? std::string::npos : nl - start - 1));
    if (!h.n)
        throw ParseError("word file header needs n=...");
    return GeneratorWord::parse(h.ctx, *h.n, s);
}

std::string format_word_file(const GeneratorWord &w) {
    return "# " + w.context().header(w.n()) + "\n" + w.serialize();
}

nlohmann::json certificate_to_json(const Certificate &c) {
    nlohmann::json j;
    j["header"] = c.context().header(c.word.n());
    j["claim"] = c.claim == Certificate::Claim::WordEquals ? "equals" : "reduces";
    if (c.subject)
        j["subject"] = matrix_to_json(*c.subject);
    j["word"] = c.word.serialize();
    j["target"] = matrix_to_json(c.target);
    return j;
}

Certificate certificate_from_json(const nlohmann::json &j) {
    for (const char *k : {"header", "claim", "word", "target"})
        if (!j.contains(k))
            throw ParseError(std::string("certificate is missing \"") + k + "\"");
    Header h = parse_header(j.at("header").get<std::string>());
    if (!h.n)
        throw ParseError("certificate header needs n=...");
    std::string claim = j.at("claim").get<std::string>();
    GeneratorWord w = GeneratorWord::parse(h.ctx, *h.n, j.at("word").get<std::string>());
    Matrix target = matrix_from_json(h.ctx.ring, j.at("target"));
    if (claim == "equals")
        return make_equals_certificate(std::move(w), std::move(target));
    if (claim == "reduces") {
        if (!j.contains("subject"))
            throw ParseError("a \"reduces\" certificate needs \"subject\"");
        return make_reduction_certificate(matrix_from_json(h.ctx.ring, j.at("subject")), std::move(w),
                                          std::move(target));
    }
    throw ParseError("unknown certificate claim '" + claim + "'");
}

nlohmann::json rep_to_json(const HigmanRep &rep) {
    nlohmann::json j;
    j["header"] = "ring=" + rep.base.ring->describe() + "; lambda=" + rep.base.ring->format(rep.base.lambda) +
                  "; form=" + rep.base.form.describe();
    j["n"] = rep.n;
    j["a"] = matrix_to_json(rep.a);
    j["b"] = matrix_to_json(rep.b);
    j["c"] = matrix_to_json(rep.c);
    return j;
}

HigmanRep rep_from_json(const nlohmann::json &j) {
    for (const char *k : {"header", "n", "a", "b", "c"})
        if (!j.contains(k))
            throw ParseError(std::string("representative is missing \"") + k + "\"");
    Header h = parse_header(j.at("header").get<std::string>());
    if (!j.at("n").is_number_integer())
        throw ParseError("representative \"n\" must be an integer");
    return higman_make(h.ctx, matrix_from_json(h.ctx.ring, j.at("a")), matrix_from_json(h.ctx.ring, j.at("b")),
                       matrix_from_json(h.ctx.ring, j.at("c")), j.at("n").get<std::int64_t>());
}

std::string read_text_file(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw ParseError("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &p, const std::string &text) {
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw DomainError("cannot write " + p.string());
    out << text;
}

} // namespace formring

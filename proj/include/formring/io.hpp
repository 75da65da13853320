#pragma once

// File formats. Every artifact names its form ring in a header line
//   ring=Z/6; lambda=-1; form=max; n=3
// Matrices and certificates are JSON objects; words are line-oriented text
// with the header on a leading '#' line.

#include "formring/higman.hpp"

#include <json.hpp>

#include <filesystem>

namespace formring {

struct Header {
    FormContext ctx;
    std::optional<std::size_t> n;
};

/// Parses and validates the header (runs lambda_check; a failure raises a
/// DomainError whose message starts with "lambda_check failed").
Header parse_header(std::string_view text);
FormContext make_context(std::string_view ring, std::string_view lambda, std::string_view form);

nlohmann::json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const RingPtr &ring, const nlohmann::json &grid);

struct MatrixFile {
    FormContext ctx;
    std::size_t n = 0;
    Matrix matrix;
};
/// Either {"header": ..., "matrix": [[...]]} or a header line followed by a grid.
MatrixFile parse_matrix_file(std::string_view text);
std::string format_matrix_file(const FormContext &ctx, const Matrix &m);

/// "# <header>" then one symbol per line.
GeneratorWord parse_word_file(std::string_view text);
std::string format_word_file(const GeneratorWord &w);

nlohmann::json certificate_to_json(const Certificate &c);
Certificate certificate_from_json(const nlohmann::json &j);

nlohmann::json rep_to_json(const HigmanRep &rep);
HigmanRep rep_from_json(const nlohmann::json &j);

std::string read_text_file(const std::filesystem::path &p);
void write_text_file(const std::filesystem::path &p, const std::string &text);
nlohmann::json parse_json(std::string_view text, std::string_view what);

} // namespace formring

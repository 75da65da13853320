#include "helpers.hpp"

#include "formring/elementary.hpp"
#include "formring/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <sys/wait.h>
#include <unistd.h>

using namespace formring;
using namespace testing_helpers;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun cli(const std::string &args) {
    std::string cmd = std::string(FORMRING_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, got);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class TempDir : public ::testing::Test {
  protected:
    void SetUp() override {
        dir = std::filesystem::temp_directory_path() /
              ("formring_io_" + std::to_string(::getpid()) + "_" +
               ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(dir);
    }
    void TearDown() override { std::filesystem::remove_all(dir); }
    std::string path(const std::string &name) const { return (dir / name).string(); }

    std::filesystem::path dir;
};

} // namespace

TEST(Header, ParsesFields) {
    Header h = parse_header("ring=Z/6; lambda=-1; form=max; n=3");
    EXPECT_EQ(h.ctx.ring->describe(), "Z/6");
    EXPECT_EQ(h.n, 3u);
    EXPECT_EQ(h.ctx.header(3), "ring=Z/6; lambda=5; form=max; n=3");
    EXPECT_THROW(parse_header("lambda=-1"), ParseError);
    EXPECT_THROW(parse_header("ring=Z; colour=red"), ParseError);
    EXPECT_THROW(parse_header("ring=Z; n=x"), ParseError);
}

TEST(Header, LambdaCheckFailure) {
    try {
        parse_header("ring=Z/5; lambda=2");
        FAIL() << "expected an error";
    } catch (const DomainError &e) {
        EXPECT_EQ(std::string(e.what()).rfind("lambda_check failed", 0), 0u);
    }
}

TEST(MatrixFile, RoundTripAndTextForm) {
    auto c = ctx("poly(Z/6,Y)", "-1", "max");
    Matrix m = gen(c, GenKind::QE, 1, 2, el(c.ring, "1+Y"), 3).matrix;
    MatrixFile back = parse_matrix_file(format_matrix_file(c, m));
    EXPECT_EQ(back.matrix, m);
    EXPECT_EQ(back.n, 3u);
    MatrixFile text = parse_matrix_file("ring=Z/6; lambda=-1; form=max; n=1\n[[\"1\",\"2\"],[\"0\",\"1\"]]\n");
    EXPECT_EQ(text.matrix, mat(text.ctx.ring, {{"1", "2"}, {"0", "1"}}));
}

TEST(MatrixFile, Errors) {
    EXPECT_THROW(parse_matrix_file("ring=Z/6; n=2\n[[\"1\",\"0\"],[\"0\",\"1\"]]"), DomainError);
    EXPECT_THROW(parse_matrix_file("ring=Z\n[[\"1\",\"0\"],[\"0\"]]"), ParseError);
    EXPECT_THROW(parse_matrix_file("ring=poly(Z,X)\n[[\"1+*X\",\"0\"],[\"0\",\"1\"]]"), ParseError);
    EXPECT_THROW(parse_matrix_file("{\"header\": \"ring=Z\"}"), ParseError);
    try {
        parse_matrix_file("ring=Z\n[[\"1\",\"0\"],\n[\"0\" \"1\"]]");
        FAIL() << "expected a parse error";
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
}

TEST(WordFile, RoundTrip) {
    auto c = ctx("Z/5", "-1", "max");
    GeneratorWord w(c, 3, {make_symbol(c, 3, GenKind::QE, 1, 2, el(c.ring, "2")),
                           make_symbol(c, 3, GenKind::QL, 3, 3, el(c.ring, "1")).inverse()});
    GeneratorWord back = parse_word_file(format_word_file(w));
    EXPECT_EQ(back.serialize(), w.serialize());
    EXPECT_THROW(parse_word_file("QE 1 2 1\n"), ParseError);
    EXPECT_THROW(parse_word_file("# ring=Z\nQE 1 2 1\n"), ParseError);
}

TEST(CertificateFile, RoundTripBothClaims) {
    auto c = symplectic_z();
    auto eq = factor_transvection(GeneratorWord(c, 3), e(c.ring, 6, 1));
    Certificate back = certificate_from_json(certificate_to_json(eq));
    EXPECT_TRUE(back.verify());
    EXPECT_EQ(back.target, eq.target);

    auto red = reduce_triangular(c, mat(c.ring, {{"1", "5"}, {"0", "1"}})).certificate;
    Certificate rb = certificate_from_json(parse_json(certificate_to_json(red).dump(), "certificate"));
    EXPECT_EQ(rb.claim, Certificate::Claim::Reduces);
    EXPECT_TRUE(rb.verify());
}

TEST(RepFile, RoundTrip) {
    auto c = symplectic_z();
    auto rep = higman_make(c, mat(c.ring, {{"0", "1"}, {"0", "0"}}), Matrix::zero(c.ring, 2, 2),
                           Matrix::zero(c.ring, 2, 2), 1);
    HigmanRep back = rep_from_json(rep_to_json(rep));
    EXPECT_EQ(back.assembled, rep.assembled);
    EXPECT_EQ(back.n, 1);
}

TEST_F(TempDir, CliCheckGqAndParseErrors) {
    auto c = ctx("Z/6", "-1", "max");
    write_text_file(path("id.json"), format_matrix_file(c, Matrix::identity(c.ring, 6)));
    EXPECT_EQ(cli("check-gq " + path("id.json")).code, 0);
    Matrix d = Matrix::identity(c.ring, 6);
    d.set(0, 0, el(c.ring, "5"));
    write_text_file(path("d.json"), format_matrix_file(c, d));
    EXPECT_EQ(cli("check-gq " + path("d.json")).code, 1);
    EXPECT_EQ(cli("check-gq --ring 'poly(Z,X)' '[[\"1+*X\",\"0\"],[\"0\",\"1\"]]'").code, 2);
    EXPECT_EQ(cli("check-gq --ring Z/5 --lambda 2 '[[\"1\",\"0\"],[\"0\",\"1\"]]'").code, 2);
    EXPECT_EQ(cli("frobnicate").code, 2);
    EXPECT_EQ(cli("check-gq " + path("missing.json")).code, 2);
}

TEST_F(TempDir, CliVerifyAndTamper) {
    CliRun r = cli("factor-transvection --ring Z --lambda -1 --n 3 --w '[\"0\",\"1\",\"0\",\"0\",\"0\",\"0\"]' -o " +
                path("cert.json"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(cli("verify " + path("cert.json")).code, 0);
    auto j = parse_json(read_text_file(path("cert.json")), "certificate");
    std::string w = j["word"];
    auto pos = w.find(" 1\n");
    ASSERT_NE(pos, std::string::npos) << w;
    w.replace(pos, 3, " 2\n");
    j["word"] = w;
    write_text_file(path("bad.json"), j.dump());
    EXPECT_EQ(cli("verify " + path("bad.json")).code, 1);
}

TEST_F(TempDir, CliTorsionScanReport) {
    CliRun r = cli("torsion-scan --ring Z/5 --k 2 --t 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0 counterexamples / 5 cases"), std::string::npos) << r.out;
}

TEST_F(TempDir, CliDeterministicReports) {
    auto c = ctx("poly(Z/6,Y)", "-1", "max");
    write_text_file(path("a.json"),
                    format_matrix_file(c, gen(c, GenKind::QE, 1, 2, el(c.ring, "Y"), 3).matrix));
    CliRun a = cli("lg-drive " + path("a.json") + " -o " + path("lg.json"));
    CliRun b = cli("lg-drive " + path("a.json"));
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(cli("verify " + path("lg.json")).code, 0);
    CliRun p = cli("patch-verify --matrix " + path("a.json") + " --cover 3^1,4^1");
    EXPECT_EQ(p.code, 0) << p.out;
}

TEST_F(TempDir, CliHigmanCommands) {
    auto c = symplectic_z();
    auto rep = higman_make(c, Matrix::zero(c.ring, 1, 1), mat(c.ring, {{"1"}}), Matrix::zero(c.ring, 1, 1), 1);
    write_text_file(path("rep.json"), rep_to_json(rep).dump());
    EXPECT_EQ(cli("higman-validate --mode A " + path("rep.json")).code, 0);
    EXPECT_EQ(cli("reduce-hyperbolic " + path("rep.json") + " -o " + path("h.json")).code, 0);
    EXPECT_EQ(cli("verify " + path("h.json")).code, 0);
}

TEST_F(TempDir, CliSeriesAndGradedCommands) {
    CliRun w = cli("witt-decompose --ring 'trunc(Z,2)' --poly '1+X+X^2'");
    EXPECT_EQ(w.code, 0);
    CliRun g = cli("ghost --ring 'trunc(Z,3)' --poly '1+X+X^2+X^3'");
    EXPECT_EQ(g.code, 0);
    CliRun pe = cli("plus-eval --ring 'poly(Z,Y)' --elem '2+3*Y' --at 2");
    EXPECT_NE(pe.out.find("2+6*Y"), std::string::npos) << pe.out;
    CliRun d = cli("dilate --ring 'loc(poly(Z,Y),2)' --n 3 'QE 1 2 Y/2'");
    EXPECT_EQ(d.code, 0) << d.out;
    EXPECT_NE(d.out.find("\"l\": 1"), std::string::npos);
    CliRun ng = cli("normalize-graded --ring 'poly(Z,Y)' --n 3 'QE 1 2 1+Y;QE 2 1 Y'");
    EXPECT_EQ(ng.code, 0) << ng.out;
    CliRun gq = cli("gen --ring Z --kind QE --i 1 --j 1 --arg 1 --n 3");
    EXPECT_EQ(gq.code, 2);
    CliRun red = cli("reduce --ring Z '[[\"1\",\"5\"],[\"0\",\"1\"]]'");
    EXPECT_EQ(red.code, 0) << red.out;
    CliRun h = cli("check-hermitian --ring Z --grid '[[\"1\"]]'");
    EXPECT_EQ(h.code, 0);
    CliRun q = cli("check-quadratic --ring Z '[[\"1\",\"3\"],[\"0\",\"1\"]]'");
    EXPECT_EQ(q.code, 0);
}

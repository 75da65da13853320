#include "helpers.hpp"

#include "formring/word.hpp"

#include <gtest/gtest.h>

using namespace formring;
using namespace testing_helpers;

TEST(ConjTranspose, Examples) {
    auto z = parse_ring("Z");
    EXPECT_TRUE(Matrix::identity(z, 6).conj_transpose().is_identity());
    auto h = parse_ring("hyp(Z)");
    EXPECT_EQ(mat(h, {{"(1,2)"}}).conj_transpose(), mat(h, {{"(2,1)"}}));
    EXPECT_EQ(mat(z, {{"0", "1"}, {"0", "0"}}).conj_transpose(), mat(z, {{"0", "0"}, {"1", "0"}}));
}

TEST(ConjTranspose, AntiAutomorphism) {
    auto r = parse_ring("hyp(Z/3)");
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        Matrix a(r, 2, 2), b(r, 2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                a.set(i, j, r->random_element(rng));
                b.set(i, j, r->random_element(rng));
            }
        EXPECT_EQ((a * b).conj_transpose(), b.conj_transpose() * a.conj_transpose());
        EXPECT_EQ(a.conj_transpose().conj_transpose(), a);
    }
}

TEST(Psi, Examples) {
    auto c = symplectic_z();
    EXPECT_EQ(psi(c, 1), mat(c.ring, {{"0", "1"}, {"-1", "0"}}));
    auto o = ctx("Z", "1", "min");
    Matrix p = psi(o, 3);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            EXPECT_EQ(p(i, j), (j == (i + 3) % 6) ? o.ring->one() : o.ring->zero());
    for (auto *cc : {&c, &o}) {
        Matrix q = psi(*cc, 3).conj_transpose() * psi(*cc, 3);
        EXPECT_TRUE(q.is_identity());
    }
    EXPECT_THROW(psi(c, 0), DomainError);
}

TEST(IsGq, Examples) {
    auto c = symplectic_z();
    EXPECT_TRUE(is_gq(c, Matrix::identity(c.ring, 6)));
    auto a = el(c.ring, "7");
    EXPECT_TRUE(is_gq(c, symbol_matrix(c, 3, make_symbol(c, 3, GenKind::QE, 1, 2, a))));
    Matrix d = Matrix::identity(c.ring, 6);
    d.set(0, 0, el(c.ring, "2"));
    EXPECT_FALSE(is_gq(c, d));
}

TEST(IsGq, ClosedUnderProductAndInverse) {
    auto c = ctx("Z/5", "-1", "max");
    Matrix a = symbol_matrix(c, 2, make_symbol(c, 2, GenKind::QR, 1, 2, el(c.ring, "3")));
    Matrix b = symbol_matrix(c, 2, make_symbol(c, 2, GenKind::QL, 2, 1, el(c.ring, "2")));
    EXPECT_TRUE(is_gq(c, a * b));
    EXPECT_TRUE(is_gq(c, gq_inverse(c, a * b)));
    EXPECT_TRUE((gq_inverse(c, a * b) * a * b).is_identity());
}

TEST(IsHermitian, Examples) {
    auto c = symplectic_z();
    auto z = c.ring;
    EXPECT_EQ(is_hermitian(c, Matrix::zero(z, 2, 2), HermitianKind::Lambda), Verdict::True);
    EXPECT_EQ(is_hermitian(c, Matrix::zero(z, 2, 2), HermitianKind::LambdaBar), Verdict::True);
    EXPECT_EQ(is_hermitian(c, mat(z, {{"1"}}), HermitianKind::Lambda), Verdict::True);
    auto o = ctx("Z", "1", "min");
    EXPECT_EQ(is_hermitian(o, mat(z, {{"1"}}), HermitianKind::Lambda), Verdict::False);
}

TEST(IsHermitian, StableUnderCongruence) {
    auto c = ctx("Z/5", "-1", "max");
    auto r = c.ring;
    Matrix beta = mat(r, {{"1", "2"}, {"2", "3"}});
    ASSERT_EQ(is_hermitian(c, beta, HermitianKind::Lambda), Verdict::True);
    Matrix alpha = mat(r, {{"1", "4"}, {"2", "1"}});
    EXPECT_EQ(is_hermitian(c, alpha.conj_transpose() * beta * alpha, HermitianKind::Lambda),
              Verdict::True);
}

TEST(IsLambdaQuadratic, IdentityAllFour) {
    auto c = symplectic_z();
    auto rep = is_lambda_quadratic(c, Matrix::identity(c.ring, 4));
    for (auto v : rep.conditions)
        EXPECT_EQ(v, Verdict::True);
    EXPECT_TRUE(rep.agree);
    EXPECT_EQ(rep.verdict, Verdict::True);
}

TEST(IsLambdaQuadratic, T12OfHermitian) {
    auto c = symplectic_z();
    auto rep = is_lambda_quadratic(c, t12(c, mat(c.ring, {{"5"}})));
    EXPECT_EQ(rep.verdict, Verdict::True);
}

TEST(IsLambdaQuadratic, HyperbolicNeedsInverseAdjoint) {
    auto c = ctx("Z/5", "1", "max");
    auto r = c.ring;
    Matrix a = mat(r, {{"1", "2"}, {"0", "3"}});
    Matrix h = hyperbolic_H(c, a);
    EXPECT_EQ(is_lambda_quadratic(c, h).verdict, Verdict::True);
    Matrix z = Matrix::zero(r, 2, 2);
    Matrix bad = Matrix::from_blocks(a, z, z, Matrix::identity(r, 2));
    EXPECT_EQ(is_lambda_quadratic(c, bad).verdict, Verdict::False);
}

TEST(IsLambdaQuadratic, PrintedConditionTwoReadingDiffers) {
    // T21(gamma): a*d + lambda c*b = I holds, the printed a*d + lambda c*d = I does not
    auto c = symplectic_z();
    Matrix m = t21(c, mat(c.ring, {{"3"}}));
    auto rep = is_lambda_quadratic(c, m);
    EXPECT_EQ(rep.conditions[1], Verdict::True);
    EXPECT_EQ(rep.condition2_literal, Verdict::False);
    EXPECT_EQ(rep.verdict, Verdict::True);
}

TEST(IsLambdaQuadratic, SingleCondition) {
    auto c = symplectic_z();
    auto rep = is_lambda_quadratic(c, Matrix::identity(c.ring, 2), 4);
    EXPECT_EQ(rep.verdict, Verdict::True);
    EXPECT_EQ(rep.conditions[0], Verdict::Unknown);
    EXPECT_THROW(is_lambda_quadratic(c, Matrix::identity(c.ring, 2), 5), DomainError);
}

TEST(Tilde, Examples) {
    auto c = ctx("Z", "-1", "max");
    auto z = c.ring;
    Matrix t = tilde(c, e(z, 6, 0));
    for (std::size_t j = 0; j < 6; ++j)
        EXPECT_EQ(t(0, j), j == 3 ? z->one() : z->zero());
    Matrix t4 = tilde(c, e(z, 6, 3));
    EXPECT_EQ(t4(0, 0), c.lambda);
    EXPECT_TRUE(tilde(c, Matrix::zero(z, 6, 1)).is_zero());
}

TEST(MForm, Examples) {
    auto c = ctx("Z", "-1", "max");
    auto z = c.ring;
    EXPECT_EQ(m_form(c, e(z, 6, 0), e(z, 6, 1)) + Matrix::identity(z, 6),
              id_plus(z, 6, {{1, 5, "1"}, {2, 4, "1"}}));
    EXPECT_EQ(inner(c, e(z, 6, 0), e(z, 6, 1)), z->zero());
    EXPECT_EQ(inner(c, e(z, 6, 0), e(z, 6, 3)), z->one());
    EXPECT_TRUE(m_form(c, e(z, 6, 0), Matrix::zero(z, 6, 1)).is_zero());
    EXPECT_EQ(inner(c, e(z, 6, 2), Matrix::zero(z, 6, 1)), z->zero());
}

TEST(MForm, IsotropicTransvectionsAreInGq) {
    for (auto c : {ctx("Z/5", "-1", "max"), ctx("Z/4", "1", "min"), ctx("hyp(Z/3)", "(1,1)", "max")}) {
        std::mt19937_64 rng(11);
        int tested = 0;
        for (int k = 0; k < 4000 && tested < 40; ++k) {
            Matrix v(c.ring, 4, 1), w(c.ring, 4, 1);
            for (std::size_t i = 0; i < 4; ++i) {
                v.set(i, 0, c.ring->random_element(rng));
                w.set(i, 0, c.ring->random_element(rng));
            }
            if (!c.ring->is_zero(inner(c, v, w)) || !c.ring->is_zero(inner(c, v, v)) ||
                !c.ring->is_zero(inner(c, w, w)))
                continue;
            ++tested;
            EXPECT_TRUE(is_gq(c, Matrix::identity(c.ring, 4) + m_form(c, v, w)));
        }
        EXPECT_GT(tested, 0);
    }
}

TEST(Constructors, HyperbolicAndTriangular) {
    auto c = symplectic_z();
    auto z = c.ring;
    EXPECT_TRUE(hyperbolic_H(c, Matrix::identity(z, 3)).is_identity());
    Matrix t = t12(c, mat(z, {{"5"}}));
    EXPECT_EQ(t, mat(z, {{"1", "5"}, {"0", "1"}}));
    EXPECT_EQ(is_lambda_quadratic(c, t).verdict, Verdict::True);
    auto o = ctx("Z", "1", "min");
    EXPECT_THROW(t12(o, mat(z, {{"1"}})), DomainError);
    EXPECT_THROW(hyperbolic_H(c, mat(z, {{"2"}})), DomainError);
}

TEST(Stabilize, Examples) {
    auto c = symplectic_z();
    auto z = c.ring;
    EXPECT_TRUE(stabilize(Matrix::identity(z, 2)).is_identity());
    Matrix a = mat(z, {{"1", "1"}, {"0", "1"}});
    Matrix s = stabilize(a);
    EXPECT_EQ(s, mat(z, {{"1", "0", "1", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"},
                         {"0", "0", "0", "1"}}));
    EXPECT_TRUE(is_gq(c, s));
    EXPECT_TRUE(perp(Matrix::identity(z, 2), Matrix::identity(z, 4)).is_identity());
    EXPECT_THROW(stabilize(Matrix::identity(z, 3)), DomainError);
}

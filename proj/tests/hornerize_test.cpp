#include <gtest/gtest.h>

#include "hornopt/generators.hpp"
#include "hornopt/hornerize.hpp"
#include "hornopt/modular.hpp"
#include "hornopt/text.hpp"
#include "support.hpp"

namespace hornopt {
namespace {

const Polynomial& eq1() {
  static const Polynomial p = parse_polynomial("x^2*z + x^3*y + x^3*y*z");
  return p;
}

Scheme by_names(const Polynomial& p, std::vector<std::string> names) { return Scheme::from_names(p.vars(), names); }

TEST(ApplyScheme, Eq1NestedForm) {
  const ExprDag d = apply_scheme(eq1(), by_names(eq1(), {"x", "y", "z"}));
  const OpCount c = count_dag_ops(d);
  EXPECT_EQ(c.mul, 4U);
  EXPECT_EQ(c.add, 2U);
  // x^2*(z + x*(y*(1 + z))) with y*(1+z) folded into the product x*y*(1+z)
  const std::string dump = dump_dag(d, &eq1().vars());
  EXPECT_NE(dump.find("const 1"), std::string::npos);
  EXPECT_NE(dump.find("x^2"), std::string::npos);
}

TEST(ApplyScheme, Eq2Form) {
  const ExprDag d = apply_scheme(eq1(), by_names(eq1(), {"y", "x", "z"}));
  EXPECT_EQ(count_dag_ops(d).mul, 6U);
  EXPECT_EQ(count_dag_ops(d).add, 2U);
  const std::vector<Residue> pt{2, 1, 3};
  EXPECT_EQ(dag_eval_mod(d, pt, 1009), eval_mod(eq1(), pt, 1009));
}

TEST(ApplyScheme, SingleTerm) {
  const Polynomial p = parse_polynomial("3*x^2");
  const ExprDag d = apply_scheme(p, Scheme::identity(1));
  EXPECT_EQ(d.node(d.root()).kind, NodeKind::Prod);
  EXPECT_EQ(d.children(d.root()).size(), 2U);
  EXPECT_EQ(count_dag_ops(d), (OpCount{2, 0}));
}

TEST(ApplyScheme, ExponentGap) {
  const Polynomial p = parse_polynomial("x^5 + x^2");
  const ExprDag d = apply_scheme(p, Scheme::identity(1));
  EXPECT_EQ(count_dag_ops(d), (OpCount{4, 1}));
}

TEST(ApplyScheme, ConstantPolynomial) {
  const Polynomial p = Polynomial::constant(VarTable({"x"}), BigInt(7));
  const ExprDag d = apply_scheme(p, Scheme::identity(1));
  EXPECT_EQ(d.node(d.root()).kind, NodeKind::Const);
  EXPECT_EQ(dag_eval_mod(d, std::vector<Residue>{5}, 1009), 7U);
}

TEST(ApplyScheme, Errors) {
  EXPECT_THROW(apply_scheme(Polynomial::zero(VarTable({"x"})), Scheme::identity(1)), InvalidArgument);
  EXPECT_THROW(apply_scheme(eq1(), Scheme::identity(2)), InvalidArgument);
  EXPECT_THROW(apply_scheme(eq1(), Scheme({0, 0, 1})), InvalidArgument);
}

TEST(ApplyScheme, Deterministic) {
  const Polynomial p = gen_resolvent(3, 3);
  const Scheme s = occurrence_order(p);
  EXPECT_EQ(dump_dag(apply_scheme(p, s)), dump_dag(apply_scheme(p, s)));
}

TEST(ApplyScheme, Canonical) {
  const Polynomial p = gen_resolvent(3, 2);
  const ExprDag d = apply_scheme(p, occurrence_order(p));
  for (NodeId id = 0; id < d.size(); ++id) {
    const Node& n = d.node(id);
    if (n.kind != NodeKind::Sum && n.kind != NodeKind::Prod) continue;
    const auto ch = d.children(id);
    EXPECT_GE(ch.size(), 2U);
    EXPECT_TRUE(std::is_sorted(ch.begin(), ch.end()));
    for (NodeId c : ch) {
      EXPECT_LT(c, id);
      EXPECT_NE(d.node(c).kind, n.kind);
    }
  }
}

TEST(DagEval, Basics) {
  const ExprDag d = apply_scheme(eq1(), Scheme::identity(3));
  EXPECT_EQ(dag_eval_mod(d, std::vector<Residue>{1, 1, 1}, kMersenne31), 3U);
  ExprDag c;
  c.set_root(c.add_const(BigInt(7)));
  EXPECT_EQ(dag_eval_mod(c, std::vector<Residue>{}, kMersenne31), 7U);
  EXPECT_THROW(dag_eval_mod(d, std::vector<Residue>{1}, kMersenne31), InvalidArgument);
}

TEST(CountDagOps, SharedNodesCountedOnce) {
  ExprDag d;
  const NodeId x = d.add_varpow(0, 3);
  const NodeId y = d.add_varpow(1, 1);
  const NodeId xy = d.add_prod({x, y});
  const NodeId m1 = d.add_const(BigInt(-1));
  const NodeId neg = d.add_prod({m1, xy});
  d.set_root(d.add_sum({xy, neg, y}));
  // x^3: 2, x^3*y: 1, -1*(x^3*y): 0, sum of three: 2
  EXPECT_EQ(count_dag_ops(d), (OpCount{3, 2}));
}

}  // namespace
}  // namespace hornopt

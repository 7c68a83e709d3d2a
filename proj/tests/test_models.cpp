#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finalg/congruence.hpp"
#include "finalg/fixtures.hpp"
#include "finalg/local.hpp"
#include "finalg/rep.hpp"

using namespace finalg;

TEST_CASE("fixture ids parse and build") {
  const char* ids[] = {"boolean2",      "ex-lattice",        "chain(5)",
                       "affine(3)",     "nudet-exact(2)",    "nudet-exact(3)",
                       "example-nilpo(2,2)", "solv-construc(2)", "solv-construc(2,3)",
                       "ex-type5-A1",   "ex-type5-A2",       "ex-type5-A3",
                       "ex-type5-A4",   "mixed(2)",          "mixed(3)",
                       "hardmix(2)",    "hardmix(3)"};
  for (const char* id : ids) {
    CAPTURE(id);
    fixture_bundle b = fixture(id);
    CHECK(b.id == id);
    CHECK_NOTHROW(b.alg.validate());
  }
  CHECK_THROWS_AS(fixture("nosuch"), error);
  CHECK_THROWS_AS(fixture("chain(1)"), error);
  CHECK_THROWS_AS(fixture("affine(4)"), error);
  CHECK_THROWS_AS(fixture("chain(2,3)"), error);
  CHECK_THROWS_AS(fixture("chain(x)"), error);
  CHECK(!fixture_families().empty());
}

TEST_CASE("nudet-exact(3): lattice, chain step, no constant-matrix form") {
  fixture_bundle b = fixture("nudet-exact(3)");
  REQUIRE(b.alg.size() == 9);

  auto lat = compute_congruence_lattice(b.alg);
  CHECK(lat.members.size() == 3);
  std::vector<int> same_y(9);
  for (int e = 0; e < 9; ++e) same_y[e] = e % 3;
  partition eta(std::move(same_y));
  CHECK(lat.index_of(eta) >= 0);

  REQUIRE(b.chain.size() == 1);
  CHECK(b.chain[0].atom == eta);
  REQUIRE(b.chain[0].zpk.has_value());
  CHECK(b.chain[0].zpk->codec.prime == 3);
  CHECK(b.chain[0].zpk->codec.dim == 1);
  std::string why;
  CHECK(validate_zpk(b.alg, *b.chain[0].zpk, &why));
  // v's block action multiplies by a context value, so no single matrix fits.
  CHECK(!b.chain[0].mxb.has_value());
  REQUIRE(b.top_module.has_value());
  CHECK(b.top_module->prime == 3);
  CHECK(b.chain[0].next.alg.size() == 3);
}

TEST_CASE("example-nilpo(6,3): lattice is the ten hand-built congruences") {
  fixture_bundle b = fixture("example-nilpo(6,3)");
  REQUIRE(b.alg.size() == 216);
  CHECK(b.alg.op_count() == 132);

  auto digits = [](int e) {
    // leftmost digit slowest
    return std::array<int, 3>{e / 36, (e / 6) % 6, e % 6};
  };
  // x ~ y iff coordinates above j agree and coordinate j agrees mod M
  auto level = [&](int j, int M) {
    std::vector<int> block(216);
    std::unordered_map<int, int> ids;
    for (int e = 0; e < 216; ++e) {
      auto c = digits(e);
      int key = c[j] % M;
      for (int i = j + 1; i < 3; ++i) key = key * 6 + c[i];
      block[e] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
    }
    return partition(std::move(block));
  };

  auto lat = compute_congruence_lattice(b.alg);
  CHECK(lat.members.size() == 10);
  for (int j = 0; j < 3; ++j)
    for (int M : {1, 2, 3}) {
      CAPTURE(j);
      CAPTURE(M);
      CHECK(lat.index_of(level(j, M)) >= 0);
    }

  REQUIRE(b.chain.size() == 5);
  CHECK(b.chain[0].atom == level(0, 3));
  int expect_prime[] = {2, 3, 2, 3, 2};
  int expect_size[] = {216, 108, 36, 18, 6};
  for (int s = 0; s < 5; ++s) {
    CAPTURE(s);
    CHECK(b.chain[s].stage.size() == expect_size[s]);
    REQUIRE(b.chain[s].zpk.has_value());
    CHECK(b.chain[s].zpk->codec.prime == expect_prime[s]);
    // every basic op acts on blocks with a context-free matrix
    REQUIRE(b.chain[s].mxb.has_value());
    std::string why;
    CHECK(validate_mxb(b.chain[s].stage, *b.chain[s].mxb, &why));
  }
  REQUIRE(b.top_module.has_value());
  CHECK(b.top_module->prime == 3);
}

TEST_CASE("affine(5) is one module") {
  fixture_bundle b = fixture("affine(5)");
  REQUIRE(b.module.has_value());
  CHECK(b.module->prime == 5);
  CHECK(b.module->dim == 1);
  std::string why;
  CHECK(validate_module(b.alg, *b.module, &why));
  CHECK(b.chain.empty());
}

TEST_CASE("solv-construc(2,3): hand codecs validate down the chain") {
  fixture_bundle b = fixture("solv-construc(2,3)");
  REQUIRE(b.alg.size() == 36);
  CHECK(b.alg.op_count() == 18);
  REQUIRE(b.chain.size() == 3);
  int expect_prime[] = {2, 2, 3};
  int expect_size[] = {36, 18, 9};
  for (int s = 0; s < 3; ++s) {
    CAPTURE(s);
    CHECK(b.chain[s].stage.size() == expect_size[s]);
    REQUIRE(b.chain[s].zpk.has_value());
    CHECK(b.chain[s].zpk->codec.prime == expect_prime[s]);
    std::string why;
    CHECK(validate_zpk(b.chain[s].stage, *b.chain[s].zpk, &why));
  }
  // x1 is rescaled by a context value, so the first step has no matrix form.
  CHECK(!b.chain[0].mxb.has_value());
  REQUIRE(b.top_module.has_value());
  CHECK(b.top_module->prime == 3);
  CHECK(b.chain[2].next.alg.size() == 3);
}

TEST_CASE("mixed(3): lattice atom with abelian blocks over a two-element order") {
  fixture_bundle b = fixture("mixed(3)");
  REQUIRE(b.alg.size() == 6);
  REQUIRE(b.beta.has_value());
  CHECK(b.beta->block_count() == 2);
  REQUIRE(b.chain.size() == 1);
  CHECK(b.chain[0].atom == *b.beta);
  REQUIRE(b.chain[0].zpk.has_value());
  CHECK(b.chain[0].zpk->codec.prime == 3);
  // counter halves add with weight one in every context
  CHECK(b.chain[0].mxb.has_value());
  CHECK(b.chain[0].next.alg.size() == 2);
  REQUIRE(b.beta_order.has_value());
  CHECK(b.beta_order->order == std::vector<int>{0, 1});
  CHECK(!b.top_module.has_value());
}

TEST_CASE("hardmix(3) kit: pseudo-Mal'cev on the counter pair, connector onto the bit pair") {
  fixture_bundle b = fixture("hardmix(3)");
  const int p = 3;
  REQUIRE(b.kit.has_value());
  const witness_kit& k = *b.kit;
  REQUIRE(k.uset == std::vector<int>{0, 1});
  REQUIRE(k.vset == std::vector<int>{0, p});
  REQUIRE(k.pseudo_malcev_d.has_value());
  REQUIRE(k.connector_f.has_value());
  REQUIRE(k.meet_v.has_value());
  REQUIRE(k.join_v.has_value());

  const term_witness& d = *k.pseudo_malcev_d;
  for (int x : k.uset)
    for (int y : k.uset) {
      CHECK(d(b.alg, {x, y, y}) == x);
      CHECK(d(b.alg, {y, y, x}) == x);
    }
  // d(0_U, -, 1_U) exchanges the endpoints of U
  CHECK(d(b.alg, {0, 0, 1}) == 1);
  CHECK(d(b.alg, {0, 1, 1}) == 0);

  const term_witness& f = *k.connector_f;
  CHECK(f(b.alg, {0}) == 0);
  CHECK(f(b.alg, {1}) == p);

  const term_witness& mv = *k.meet_v;
  const term_witness& jv = *k.join_v;
  CHECK(mv(b.alg, {0, p}) == 0);
  CHECK(mv(b.alg, {p, 0}) == 0);
  CHECK(mv(b.alg, {p, p}) == p);
  CHECK(mv(b.alg, {0, 0}) == 0);
  CHECK(jv(b.alg, {0, p}) == p);
  CHECK(jv(b.alg, {p, 0}) == p);
  CHECK(jv(b.alg, {0, 0}) == 0);
  CHECK(jv(b.alg, {p, p}) == p);
}

TEST_CASE("boolean2 kit matches the basic operations") {
  fixture_bundle b = fixture("boolean2");
  REQUIRE(b.kit.has_value());
  const witness_kit& k = *b.kit;
  CHECK((*k.meet_u)(b.alg, {1, 0}) == 0);
  CHECK((*k.join_u)(b.alg, {1, 0}) == 1);
  CHECK((*k.neg_u)(b.alg, {0}) == 1);
  REQUIRE(k.projections.size() == 2);
  CHECK(k.projections[0](b.alg, {1}) == 1);
  CHECK(k.projections[1](b.alg, {1}) == 0);
}

TEST_CASE("three-element bottom-absorbing algebras satisfy the pinned identities") {
  // A4 carries the xor-like op, A1 the meet; e1,e2,e3 are shared.
  fixture_bundle a1 = fixture("ex-type5-A1");
  fixture_bundle a4 = fixture("ex-type5-A4");
  int e1 = a4.alg.op_index("e1"), e2 = a4.alg.op_index("e2"), e3 = a4.alg.op_index("e3");
  int add = a4.alg.op_index("add");
  int meet = a1.alg.op_index("meet");
  REQUIRE(add >= 0);
  REQUIRE(meet >= 0);
  for (int x = 0; x < 3; ++x) {
    // the top element encodes logical one
    CHECK(a4.alg.apply(e2, {x}) == a4.alg.apply(add, {a4.alg.apply(add, {x, x}), 2}));
    CHECK(a4.alg.apply(e3, {x}) == a4.alg.apply(add, {x, x}));
    for (int y = 0; y < 3; ++y) {
      CHECK(a1.alg.apply(e1, {a1.alg.apply(meet, {x, y})}) ==
            a1.alg.apply(meet, {a1.alg.apply(e1, {x}), a1.alg.apply(e1, {y})}));
      CHECK(a4.alg.apply(e1, {a4.alg.apply(add, {x, a4.alg.apply(e1, {y})})}) ==
            a4.alg.apply(add, {a4.alg.apply(e1, {x}), a4.alg.apply(e1, {y})}));
    }
  }
}

TEST_CASE("minimal sets of the small quotients") {
  fixture_bundle bb = fixture("boolean2");
  const int n2 = 2;
  auto msb = minimal_sets(bb.alg, partition::zero(n2), partition::one(n2));
  REQUIRE(msb.size() == 1);
  CHECK(msb[0].members == std::vector<int>{0, 1});
  CHECK(msb[0].idempotent == identity_fn(2));
  REQUIRE(msb[0].traces.size() == 1);
  CHECK(msb[0].tail.empty());

  fixture_bundle af = fixture("affine(3)");
  auto msa = minimal_sets(af.alg, partition::zero(3), partition::one(3));
  REQUIRE(msa.size() == 1);
  CHECK(msa[0].members == std::vector<int>{0, 1, 2});
  REQUIRE(msa[0].traces.size() == 1);
  CHECK(msa[0].traces[0].size() == 3);
  CHECK_THROWS_AS(leq_u(af.alg, msa[0]), error);

  fixture_bundle ml = fixture("ex-lattice");
  auto msl = minimal_sets(ml.alg, partition::zero(2), partition::one(2));
  REQUIRE(msl.size() == 1);
  CHECK(msl[0].members == std::vector<int>{0, 1});
}

TEST_CASE("two-element order: lattice is a chain, boolean is an antichain") {
  fixture_bundle ml = fixture("ex-lattice");
  auto msl = minimal_sets(ml.alg, partition::zero(2), partition::one(2));
  u_order ol = leq_u(ml.alg, msl[0]);
  CHECK(ol.rel[0][1]);
  CHECK(!ol.rel[1][0]);
  CHECK(ol.rel[0][0]);
  CHECK(!find_incomparable_pair(ol).has_value());
  order_report rl = check_order_lemma(ml.alg, ol);
  CHECK(rl.ok());

  fixture_bundle bb = fixture("boolean2");
  auto msb = minimal_sets(bb.alg, partition::zero(2), partition::one(2));
  u_order ob = leq_u(bb.alg, msb[0]);
  CHECK(!ob.rel[0][1]);
  CHECK(!ob.rel[1][0]);
  auto inc = find_incomparable_pair(ob);
  REQUIRE(inc.has_value());
  CHECK(inc->a == 0);
  CHECK(inc->b == 1);
  CHECK(ob.maps[inc->i][0] == 0);
  CHECK(ob.maps[inc->i][1] == 1);
  CHECK(ob.maps[inc->j][0] == 1);
  CHECK(ob.maps[inc->j][1] == 0);
  CHECK(check_order_lemma(bb.alg, ob).ok());

  // fault injection: a spurious pair must be caught, with a witness
  u_order bad = ol;
  bad.rel[1][0] = 1;
  order_report rb = check_order_lemma(ml.alg, bad);
  CHECK(!rb.ok());
  CHECK(!rb.detail.empty());
}

TEST_CASE("cover types across the fixture families") {
  auto type_of = [](const fixture_bundle& b, const partition& al, const partition& be) {
    return classify_type(b.alg, al, be);
  };
  fixture_bundle bb = fixture("boolean2");
  auto t3 = type_of(bb, partition::zero(2), partition::one(2));
  CHECK(t3.type == 3);

  fixture_bundle ml = fixture("ex-lattice");
  CHECK(type_of(ml, partition::zero(2), partition::one(2)).type == 4);

  fixture_bundle af = fixture("affine(3)");
  auto t2 = type_of(af, partition::zero(3), partition::one(3));
  CHECK(t2.type == 2);
  CHECK(t2.characteristic == 3);

  fixture_bundle nd = fixture("nudet-exact(3)");
  auto low = type_of(nd, partition::zero(9), nd.chain[0].atom);
  CHECK(low.type == 2);
  CHECK(low.characteristic == 3);
  auto up = type_of(nd, nd.chain[0].atom, partition::one(9));
  CHECK(up.type == 2);
  CHECK(up.characteristic == 3);

  for (const char* id : {"ex-type5-A1", "ex-type5-A2", "ex-type5-A3", "ex-type5-A4"}) {
    CAPTURE(id);
    fixture_bundle t5 = fixture(id);
    CHECK(type_of(t5, partition::zero(3), partition::one(3)).type == 5);
  }

  // a bare involution: nothing induced beyond unary moves
  finite_algebra flip("flip", 2, {operation{"swap", 1, {1, 0}}});
  CHECK(classify_type(flip, partition::zero(2), partition::one(2)).type == 1);
}

TEST_CASE("typesets of the classification fixtures") {
  CHECK(typeset(fixture("boolean2").alg).types == std::set<int>{3});
  CHECK(typeset(fixture("ex-lattice").alg).types == std::set<int>{4});
  auto tn = typeset(fixture("example-nilpo(2,2)").alg);
  CHECK(tn.types == std::set<int>{2});
  CHECK(tn.complete);
  auto tbig = typeset(fixture("example-nilpo(6,3)").alg);
  CHECK(tbig.types == std::set<int>{2});
  CHECK(tbig.complete);
  auto tsolv = typeset(fixture("solv-construc(2,3)").alg);
  CHECK(tsolv.types == std::set<int>{2});
  CHECK(tsolv.complete);
  auto tmix = typeset(fixture("mixed(3)").alg);
  CHECK(tmix.types == std::set<int>{2, 4});
  auto thard = typeset(fixture("hardmix(3)").alg);
  CHECK(thard.types == std::set<int>{2, 4});
}

TEST_CASE("total order search") {
  auto w = totally_ordered_check(fixture("chain(3)").alg);
  REQUIRE(w.has_value());
  CHECK(w->order == std::vector<int>{0, 1, 2});
  CHECK(w->embedding_dim() == 2);
  CHECK(w->coordinates(0) == std::vector<int>{0, 0});
  CHECK(w->coordinates(1) == std::vector<int>{1, 0});
  CHECK(w->coordinates(2) == std::vector<int>{1, 1});

  CHECK(!totally_ordered_check(fixture("boolean2").alg).has_value());
  CHECK(totally_ordered_check(fixture("ex-lattice").alg).has_value());
  CHECK(!totally_ordered_check(fixture("mixed(3)").alg).has_value());
  CHECK_THROWS_AS(totally_ordered_check(fixture("example-nilpo(6,3)").alg), error);
}

TEST_CASE("chain(4) carries its order witness only") {
  fixture_bundle b = fixture("chain(4)");
  REQUIRE(b.order.has_value());
  CHECK(b.order->order == std::vector<int>{0, 1, 2, 3});
  CHECK(b.chain.empty());
  CHECK(!b.module.has_value());
}

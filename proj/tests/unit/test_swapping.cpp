#include <doctest.h>

#include <stdexcept>

#include "oracle.hpp"
#include "qsdc/bell.hpp"
#include "qsdc/swapping.hpp"

using namespace qsdc;

TEST_CASE("group sizing") {
  SwapSessionConfig c;
  c.n_groups = 8;
  CHECK(c.group_pairs() == 16);
  CHECK(c.check_pairs() == 4);  // ceil(0.2 * 16)
  CHECK(c.usable_groups() == 8);
  c.purification_yield = 0.5;
  CHECK(c.usable_groups() == 4);
  c.purification_yield = 0.3;
  CHECK(c.usable_groups() == 2);
  c.purification_yield = 0.1;
  CHECK(c.usable_groups() == 0);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("setup distributes groups plus check pairs") {
  SwapSessionConfig c;
  RandomStream r("setup", 1);
  const auto ch = setup_channel(c, r);
  CHECK(ch.report.passed);
  CHECK(ch.report.prepared_pairs == 20);
  CHECK(ch.report.trojan_check.tested + ch.report.sample_check.records.size() == 4);
  CHECK(ch.usable_groups == 8);
  REQUIRE(ch.pairs.size() == 16);
  for (const auto& p : ch.pairs) {
    CHECK(equal_up_to_phase(p, bell_state(BellIndex::PsiMinus, "B", "C")));
  }
}

TEST_CASE("every encoding survives every swap branch") {
  const auto epr = bell_state(BellIndex::PsiMinus, "B", "C");
  RandomStream r("groups", 2);
  for (auto op : kAllPaulis) {
    std::array<std::size_t, 4> bob{};
    for (int i = 0; i < 400; ++i) {
      const auto rec = run_swap_group(epr, epr, op, r);
      CHECK(rec.decoded == op);
      CHECK(rec.encoding == op);
      ++bob[bell_number(rec.bob_outcome)];
    }
    CHECK(oracle::chi2_sf_df3(oracle::chi_square(bob)) > 0.001);
  }
}

TEST_CASE("noiseless swapping session round trip") {
  SwapSessionConfig c;
  c.seed = 4;
  const Message m = Message::from_hex("c3a5");
  const auto t = run_swap_session(c, m);
  CHECK(t.status == SessionStatus::Completed);
  CHECK(t.decoded == m);
  CHECK(t.groups.size() == 8);
  CHECK(t.capacity.message_bits == 16);
  CHECK(t.capacity.pairs_consumed == 16);
  CHECK(t.capacity.bits_per_pair == 1.0);
  CHECK(t.setup.remaining.empty());
}

TEST_CASE("message length must match the usable groups") {
  SwapSessionConfig c;
  c.purification_yield = 0.5;
  CHECK_THROWS_AS(run_swap_session(c, Message::from_hex("c3a5")), CapacityMismatch);
  CHECK_NOTHROW(run_swap_session(c, Message::from_hex("c3")));
}

TEST_CASE("attacked setup aborts before any encoding") {
  SwapSessionConfig c;
  c.n_groups = 100;
  c.sample_fraction = 0.5;
  c.attack = InterceptResend{};
  c.seed = 9;
  Message m;
  m.bits.assign(200, 1);
  const auto t = run_swap_session(c, m);
  CHECK(t.status == SessionStatus::AbortAtSampleCheck);
  CHECK(t.groups.empty());
  CHECK(t.usable_groups == 0);
}

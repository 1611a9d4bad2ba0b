#include <random>

#include "doctest.h"
#include "h2plan/chain.hpp"

using namespace h2plan;
using namespace h2plan::chain;

TEST_CASE("e2h coefficient") {
    CHECK(e2h_coefficient(3600.0) == doctest::Approx(1.0));
    CHECK(e2h_coefficient(120.0) == doctest::Approx(30.0));
    CHECK(e2h_coefficient(142.0) == doctest::Approx(25.352).epsilon(5e-5));
    CHECK_THROWS_AS(e2h_coefficient(0.0), std::invalid_argument);
    CHECK_THROWS_AS(e2h_coefficient(-1.0), std::invalid_argument);
}

TEST_CASE("electrolyzer output") {
    const double beta = e2h_coefficient(120.0);
    auto zero = ec_output(0.0, 0.835, 0.8, beta);
    CHECK(zero.hydrogen_kg_per_h == 0.0);
    CHECK(zero.heat_mw == 0.0);
    auto soec = ec_output(1.0, 0.835, 0.8, beta);
    CHECK(soec.hydrogen_kg_per_h == doctest::Approx(25.05));
    CHECK(soec.heat_mw == doctest::Approx(0.132));
    auto aec = ec_output(2.0, 0.75, 0.8, beta);
    CHECK(aec.hydrogen_kg_per_h == doctest::Approx(45.0));
    CHECK(aec.heat_mw == doctest::Approx(0.40));
}

TEST_CASE("hydrogen turbine and fuel cell output") {
    const double beta = e2h_coefficient(120.0);
    auto z = ht_output(0.0, 0.6, 0.8, beta);
    CHECK(z.power_mw == 0.0);
    CHECK(z.heat_mw == 0.0);
    auto ht = ht_output(30.0, 0.6, 0.8, beta);
    CHECK(ht.power_mw == doctest::Approx(0.6));
    CHECK(ht.heat_mw == doctest::Approx(0.32));
    auto ht2 = ht_output(60.0, 0.6, 0.8, beta);
    CHECK(ht2.power_mw == doctest::Approx(1.2));
    CHECK(ht2.heat_mw == doctest::Approx(0.64));

    auto sofc = fc_output(30.0, 0.7, 0.8, beta);
    CHECK(sofc.power_mw == doctest::Approx(0.7));
    CHECK(sofc.heat_mw == doctest::Approx(0.24));
    auto pemfc = fc_output(30.0, 0.57, 0.9, beta);
    CHECK(pemfc.power_mw == doctest::Approx(0.57));
    CHECK(pemfc.heat_mw == doctest::Approx(0.387));
}

TEST_CASE("devices are linear and conserve energy") {
    const double beta = e2h_coefficient(120.0);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> eff(0.05, 1.0), heff(0.0, 1.0), load(0.0, 500.0);
    for (int i = 0; i < 500; ++i) {
        const double ee = eff(rng), eh = heff(rng);
        const double p = load(rng), s = 3.7;
        auto a = ec_output(p, ee, eh, beta);
        auto b = ec_output(s * p, ee, eh, beta);
        CHECK(b.hydrogen_kg_per_h == doctest::Approx(s * a.hydrogen_kg_per_h));
        CHECK(b.heat_mw == doctest::Approx(s * a.heat_mw));
        // useful power + recovered heat never exceeds input energy
        auto ht = ht_output(p, ee, eh, beta);
        CHECK(ht.power_mw + ht.heat_mw <= p / beta + 1e-9);
    }
}

TEST_CASE("surplus bound for electrolysis") {
    CHECK(ec_surplus_bound(0.5, 100.0, 50.0, 0.2, 10.0, 2.0) == doctest::Approx(0.0));
    CHECK(ec_surplus_bound(0.5, 100.0, 30.0, 0.0, 0.0, 0.0) == doctest::Approx(20.0));
    CHECK(ec_surplus_bound(0.9, 0.0, 0.0, 0.9, 0.0, 0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(ec_surplus_bound(0.5, 100.0, 60.0, 0.0, 0.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("chain economics") {
    core::PriceBook prices;  // water 0.01, oxygen 0.04, hydrogen 2.0
    auto zero = chain_economics(0.0, 0.0, prices, 9.0, 8.0);
    CHECK(zero.water_cost_usd == 0.0);
    CHECK(zero.oxygen_revenue_usd == 0.0);
    CHECK(zero.hydrogen_revenue_usd == 0.0);
    auto e = chain_economics(1000.0, 500.0, prices, 9.0, 8.0);
    CHECK(e.water_cost_usd == doctest::Approx(90.0));
    CHECK(e.oxygen_revenue_usd == doctest::Approx(320.0));
    CHECK(e.hydrogen_revenue_usd == doctest::Approx(1000.0));
}

TEST_CASE("storage step matches the recursion") {
    core::StorageParams s;
    s.charge_eff = 0.95;
    s.discharge_eff = 0.95;
    s.loss_rate = 0.0;
    // charging 10 kg stores 9.5
    double soc = storage_step(0.0, 10.0, 0.0, s);
    CHECK(soc == doctest::Approx(9.5));
    // delivering 9.025 at eta_dis 0.95 drains exactly those 9.5
    soc = storage_step(soc, 0.0, 9.025, s);
    CHECK(soc == doctest::Approx(0.0).epsilon(1e-12));

    core::StorageParams lossless;
    soc = storage_step(50.0, 10.0, 10.0, lossless);
    CHECK(soc == doctest::Approx(50.0));
}

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "neqrscope/neqrscope.hpp"
#include "support/oracles.hpp"

using namespace neqrscope;

namespace {

std::string golden_path(const std::string& name) {
    return std::string(NEQRSCOPE_GOLDEN_DIR) + "/" + name + ".analysis.json";
}

bool updating() {
    const char* v = std::getenv("NEQRSCOPE_UPDATE_GOLDEN");
    return v && std::string(v) == "1";
}

} // namespace

TEST_CASE("scenario fixtures match their golden analyses", "[scenarios][golden]") {
    for (const auto& name : scenarios::names()) {
        DYNAMIC_SECTION(name) {
            const auto c = scenarios::by_name(name);
            const auto text = io::serialize_analysis({c, simulate_and_analyze(c)}, false);
            if (updating()) {
                io::write_text_file(golden_path(name), text);
            }
            REQUIRE(std::filesystem::exists(golden_path(name)));
            const auto golden = io::read_text_file(golden_path(name));
            CHECK(text.size() == golden.size());
            CHECK(text == golden);
        }
    }
}

TEST_CASE("scenario shapes", "[scenarios]") {
    CHECK(scenarios::eq1_prep().gates.size() == 5);
    CHECK(scenarios::inversion().gates.size() == 6);
    const auto broken = scenarios::broken_final_gate();
    REQUIRE(broken.gates.size() == 3);
    CHECK(broken.gates[0].name == "NEQR");
    CHECK(broken.gates[1].name == "X");
    CHECK(broken.gates[2].name == "PIXEL(POS=(0,0), VAL=255)");
    CHECK(scenarios::prep8x8().gates.size() == 65);
    CHECK(scenarios::threshold_c2().gates.size() == 18);
    CHECK(scenarios::threshold_c2().gates.back().name == "THRESHOLD(4)");
    CHECK_THROWS_AS(scenarios::by_name("nope"), BuilderError);

    const auto c2 = simulate_and_analyze(scenarios::threshold_c2());
    CHECK(c2.gates.back().after_image == apply_threshold(scenarios::c2_image(), scenarios::kC2Threshold));
}

TEST_CASE("fault scenario golden grid agrees with a brute-force oracle", "[scenarios][golden]") {
    const auto c = scenarios::prep8x8_hfault();
    const auto golden = io::parse_analysis(io::read_text_file(golden_path("prep8x8-hfault")));
    REQUIRE(golden.circuit == c);

    oracle::SparseSim sim;
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        for (const auto& g : c.gates[i].gates) {
            sim.apply(g);
        }
        const auto probs = oracle::pixel_probs(sim.entries(), c.layout.n, c.layout.b);
        const auto& ga = golden.bundle.gates[i];
        for (int r = 0; r < 8; ++r) {
            for (int col = 0; col < 8; ++col) {
                const auto cond = probs.conditional(r, col);
                const double mass = probs.mass(r, col);
                const PixelDistribution px{r, col, mass, cond};
                INFO("gate " << i << " pixel (" << r << "," << col << ")");
                CHECK(modality(px) == ga.modality.at(r, col));
                CHECK(std::abs(mass - ga.pixel(r, col).joint_mass) < 1e-12);
                const auto h = bin_histogram(cond, 8);
                for (std::size_t j = 0; j < 8; ++j) {
                    CHECK(std::abs(h.probs[j] - ga.pixel(r, col).histogram.probs[j]) < 1e-12);
                }
            }
        }
    }
}

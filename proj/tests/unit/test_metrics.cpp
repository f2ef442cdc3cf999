#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "chatsumm/error.hpp"
#include "chatsumm/metrics.hpp"

using namespace chatsumm;

namespace {

std::vector<std::string> toks(const std::string& s) { return metric_tokens(s); }

}  // namespace

TEST_CASE("metric tokens lowercase and strip punctuation") {
    auto t = metric_tokens("Hello, World! It's 9am.");
    REQUIRE(t.size() == 5);
    CHECK(t[0] == "hello");
    CHECK(t[1] == "world");
    CHECK(t[2] == "it");
    CHECK(t[3] == "s");
    CHECK(t[4] == "9am");
    CHECK(metric_tokens("...").empty());
}

TEST_CASE("bleu matches the hand-worked example") {
    double got = bleu(toks("the cat sat on mat"), toks("the cat sat on the mat"));
    // p1=5/5, p2=3/4, p3=2/3, p4=1/2, BP=exp(1-6/5)
    double want = std::exp(-0.2) * std::pow(0.75 * (2.0 / 3.0) * 0.5, 0.25);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("bleu is 1 for identical texts, even short ones") {
    CHECK(bleu(toks("alpha bravo charlie delta echo"), toks("alpha bravo charlie delta echo")) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bleu(toks("alpha bravo"), toks("alpha bravo")) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bleu on fully disjoint long texts stays near zero") {
    std::vector<std::string> cand, ref;
    for (int i = 0; i < 30; ++i) {
        cand.push_back("x" + std::to_string(i));
        ref.push_back("y" + std::to_string(i));
    }
    double got = bleu(cand, ref);
    CHECK(got < 0.05);
    CHECK(got > 0.0);
}

TEST_CASE("bleu edge cases") {
    CHECK(bleu({}, toks("a b")) == 0.0);
    // Brevity penalty punishes the short candidate.
    double short_cand = bleu(toks("alpha bravo"), toks("alpha bravo charlie delta echo foxtrot"));
    double long_cand = bleu(toks("alpha bravo charlie delta echo foxtrot"), toks("alpha bravo"));
    // Perfect prefix of a 3x longer reference: all precisions 1, BP = e^-2.
    CHECK(short_cand == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(long_cand > short_cand);
    // Clipping: repeating a reference word does not inflate the match count.
    double clipped = bleu(toks("alpha alpha alpha"), toks("alpha"));
    CHECK(clipped == doctest::Approx(std::pow(1.0 / 18.0, 0.25)).epsilon(1e-12));
}

TEST_CASE("rouge-1 uses clipped multiset overlap") {
    RougeScore r = rouge(toks("a b c"), toks("a b d"), RougeVariant::R1);
    CHECK(r.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(r.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(r.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    RougeScore clip = rouge(toks("a a a"), toks("a"), RougeVariant::R1);
    CHECK(clip.precision == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(clip.recall == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(clip.f1 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("rouge-L runs on the longest common subsequence") {
    RougeScore r = rouge(toks("a b c d"), toks("a c b d"), RougeVariant::RL);
    CHECK(r.precision == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(r.recall == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(r.f1 == doctest::Approx(0.75).epsilon(1e-12));

    // A subsequence candidate has precision 1.
    RougeScore sub = rouge(toks("a c"), toks("a b c d"), RougeVariant::RL);
    CHECK(sub.precision == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sub.recall == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("rouge empty inputs give zero, not NaN") {
    for (auto v : {RougeVariant::R1, RougeVariant::RL}) {
        RougeScore r = rouge({}, toks("a b"), v);
        CHECK(r.precision == 0.0);
        CHECK(r.recall == 0.0);
        CHECK(r.f1 == 0.0);
        RougeScore both = rouge({}, {}, v);
        CHECK(both.f1 == 0.0);
    }
}

TEST_CASE("rouge-1 f1 is symmetric and recall grows with coverage") {
    std::mt19937 gen(7);
    std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f"};
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::string> x, y;
        for (int i = 0; i < 8; ++i) x.push_back(vocab[gen() % vocab.size()]);
        for (int i = 0; i < 11; ++i) y.push_back(vocab[gen() % vocab.size()]);
        CHECK(rouge(x, y, RougeVariant::R1).f1 ==
              doctest::Approx(rouge(y, x, RougeVariant::R1).f1).epsilon(1e-12));

        std::vector<std::string> grow;
        double prev = 0.0;
        for (const auto& tok : y) {
            grow.push_back(tok);
            double rec = rouge(grow, y, RougeVariant::R1).recall;
            CHECK(rec >= prev - 1e-12);
            prev = rec;
        }
    }
}

TEST_CASE("punctuation accuracy counts matching positions") {
    using P = PunctLabel;
    double two_thirds = punct_accuracy({P::O, P::Period, P::O}, {P::O, P::O, P::O});
    CHECK(two_thirds == doctest::Approx(200.0 / 3.0).epsilon(1e-9));

    CHECK(punct_accuracy({}, {}) == 100.0);
    CHECK_THROWS_AS(punct_accuracy({P::O}, {P::O, P::O}), Error);
}

TEST_CASE("periods-only mode folds commas and questions first") {
    using P = PunctLabel;
    // COMMA folds to O, QUESTION folds to PERIOD.
    double acc = punct_accuracy({P::Comma, P::Question, P::Period},
                                {P::O, P::Period, P::Comma}, PunctMode::PeriodsOnly);
    CHECK(acc == doctest::Approx(200.0 / 3.0).epsilon(1e-9));
    double full = punct_accuracy({P::Comma, P::Question, P::Period},
                                 {P::O, P::Period, P::Comma}, PunctMode::Full);
    CHECK(full == 0.0);
}

TEST_CASE("aggregate means match a brute-force pass") {
    std::mt19937 gen(99);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<std::pair<ChannelKind, MetricScores>> items;
    double sum_bleu = 0.0, sum_r1 = 0.0, sum_punct = 0.0;
    int n = 0, punct_n = 0;
    for (int i = 0; i < 500; ++i) {
        MetricScores m;
        m.bleu = uni(gen);
        m.rouge1.f1 = uni(gen);
        m.rougeL.recall = uni(gen);
        if (i % 3 == 0) {
            m.punct_accuracy = 100.0 * uni(gen);
            sum_punct += *m.punct_accuracy;
            ++punct_n;
        }
        sum_bleu += m.bleu;
        sum_r1 += m.rouge1.f1;
        ++n;
        items.push_back({ChannelKind::Customer, m});
    }
    AggregateReport rep = aggregate(items);
    REQUIRE(rep.channels.count(ChannelKind::Customer) == 1);
    const AggregateEntry& e = rep.channels.at(ChannelKind::Customer);
    CHECK(e.count == n);
    CHECK(e.punct_count == punct_n);
    CHECK(e.mean.bleu == doctest::Approx(sum_bleu / n).epsilon(1e-12));
    CHECK(e.mean.rouge1.f1 == doctest::Approx(sum_r1 / n).epsilon(1e-12));
    REQUIRE(e.mean.punct_accuracy.has_value());
    CHECK(*e.mean.punct_accuracy == doctest::Approx(sum_punct / punct_n).epsilon(1e-12));
}

TEST_CASE("aggregate keeps channels separate") {
    MetricScores a, b;
    a.bleu = 0.2;
    b.bleu = 0.8;
    AggregateReport rep = aggregate({{ChannelKind::Customer, a}, {ChannelKind::Agent, b}});
    CHECK(rep.channels.at(ChannelKind::Customer).mean.bleu == doctest::Approx(0.2));
    CHECK(rep.channels.at(ChannelKind::Agent).mean.bleu == doctest::Approx(0.8));
    CHECK(!rep.channels.at(ChannelKind::Agent).mean.punct_accuracy.has_value());
}

TEST_CASE("score_pair wires text through all three metrics") {
    MetricScores m = score_pair("Billing was fixed today.", "billing was fixed today");
    CHECK(m.bleu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.rouge1.f1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.rougeL.f1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(!m.punct_accuracy.has_value());

    MetricScores zero = score_pair("", "anything here");
    CHECK(zero.bleu == 0.0);
    CHECK(zero.rouge1.f1 == 0.0);
}

TEST_CASE("scores stay inside their ranges on random inputs") {
    std::mt19937 gen(1234);
    std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f", "g", "h"};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::string> cand, ref;
        int nc = 1 + static_cast<int>(gen() % 25);
        int nr = 1 + static_cast<int>(gen() % 25);
        for (int i = 0; i < nc; ++i) cand.push_back(vocab[gen() % vocab.size()]);
        for (int i = 0; i < nr; ++i) ref.push_back(vocab[gen() % vocab.size()]);
        double b = bleu(cand, ref);
        CHECK(b >= 0.0);
        CHECK(b <= 1.0 + 1e-12);
        for (auto v : {RougeVariant::R1, RougeVariant::RL}) {
            RougeScore r = rouge(cand, ref, v);
            for (double s : {r.precision, r.recall, r.f1}) {
                CHECK(s >= 0.0);
                CHECK(s <= 1.0 + 1e-12);
            }
        }
    }
}

#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <thread>

#include "chatsumm/embeddings.hpp"
#include "chatsumm/error.hpp"

using namespace chatsumm;

TEST_CASE("cosine similarity") {
    CHECK(cosine({1, 2, 3}, {4, 5, 6}) == doctest::Approx(0.9746318461970762).epsilon(1e-12));
    CHECK(cosine({1, 0}, {0, 1}) == doctest::Approx(0.0));
    CHECK(cosine({1, 0}, {-1, 0}) == doctest::Approx(-1.0));
    CHECK(cosine({0, 0}, {1, 1}) == 0.0);
    CHECK_THROWS_AS(cosine({1, 2}, {1, 2, 3}), Error);
}

TEST_CASE("word vectors load from the text format") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "chatsumm_emb_test";
    fs::create_directories(dir);
    fs::path file = dir / "vectors.txt";
    std::ofstream(file) << "alpha 1.0 0.0\n"
                        << "bravo 0.0 1.0\n"
                        << "broken 0.5\n"
                        << "charlie 0.5 0.5\n";

    WordVectorStore store = load_word_vectors(file.string());
    CHECK(store.dim == 2);
    CHECK(store.table.size() == 3);
    CHECK(store.skipped_rows == 1);
    REQUIRE(store.find("alpha") != nullptr);
    CHECK((*store.find("alpha"))[0] == doctest::Approx(1.0));
    CHECK(store.find("missing") == nullptr);

    CHECK_THROWS_AS(load_word_vectors((dir / "nope.txt").string()), Error);

    fs::path junk = dir / "junk.txt";
    std::ofstream(junk) << "\n\n";
    try {
        load_word_vectors(junk.string());
        FAIL("expected NoValidRows");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoValidRows);
    }
    fs::remove_all(dir);
}

namespace {

WordVectorStore tiny_store() {
    WordVectorStore s;
    s.dim = 2;
    s.table["alpha"] = {1.0, 0.0};
    s.table["bravo"] = {0.0, 1.0};
    return s;
}

}  // namespace

TEST_CASE("mean encoder averages the in-vocabulary words") {
    WordVectorStore store = tiny_store();
    MeanWordEncoder enc(store);

    SentenceVector both = enc.encode("alpha bravo");
    REQUIRE(both.values.size() == 2);
    CHECK(both.values[0] == doctest::Approx(0.5));
    CHECK(both.values[1] == doctest::Approx(0.5));
    CHECK(both.source_len == 2);

    SentenceVector partial = enc.encode("Alpha, unknown!");
    CHECK(partial.source_len == 1);
    CHECK(partial.values[0] == doctest::Approx(1.0));

    SentenceVector none = enc.encode("zz qq");
    CHECK(none.source_len == 0);
    REQUIRE(none.values.size() == 2);
    CHECK(none.values[0] == 0.0);
    CHECK(none.values[1] == 0.0);
}

TEST_CASE("embed_sentence defaults to the mean encoder") {
    WordVectorStore store = tiny_store();
    Sentence s{0, "alpha bravo"};
    SentenceVector v = embed_sentence(s, store);
    REQUIRE(v.values.size() == 2);
    CHECK(v.values[0] == doctest::Approx(0.5));
}

TEST_CASE("remote encoder round trips a vector") {
    httplib::Server svr;
    svr.Post("/v1/embed", [](const httplib::Request& req, httplib::Response& res) {
        auto body = nlohmann::json::parse(req.body);
        CHECK(body.contains("text"));
        res.set_content(nlohmann::json{{"vector", {0.25, 0.75}}}.dump(), "application/json");
    });
    int port = svr.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread runner([&] { svr.listen_after_bind(); });
    svr.wait_until_ready();

    RemoteEncoderConfig cfg;
    cfg.port = port;
    RemoteEncoder enc(cfg);
    SentenceVector v = enc.encode("whatever text");
    REQUIRE(v.values.size() == 2);
    CHECK(v.values[0] == doctest::Approx(0.25));
    CHECK(v.values[1] == doctest::Approx(0.75));

    svr.stop();
    runner.join();
}

TEST_CASE("remote failure falls back to the mean only when allowed") {
    WordVectorStore store = tiny_store();
    Sentence s{0, "alpha"};

    RemoteEncoderConfig down;
    down.port = 1;
    down.timeout_sec = 0.2;

    RemoteEncoder strict(down);
    CHECK_THROWS_AS(embed_sentence(s, store, &strict), Error);

    down.fallback_to_mean = true;
    RemoteEncoder lenient(down);
    SentenceVector v = embed_sentence(s, store, &lenient);
    REQUIRE(v.values.size() == 2);
    CHECK(v.values[0] == doctest::Approx(1.0));
    CHECK(v.source_len == 1);
}

// Copyright 2026 The ssibridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include <filesystem>

#include "reference_sha256.hpp"
#include "ssibridge/error.hpp"
#include "ssibridge/signed_token.hpp"

using namespace ssibridge;

TEST_SUITE("bytes") {
  TEST_CASE("base64url round trip over random buffers") {
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
      Bytes data = rng.bytes(i % 67);
      std::string encoded = b64url_encode(data);
      CHECK(encoded.find('=') == std::string::npos);
      CHECK(encoded.find('+') == std::string::npos);
      CHECK(encoded.find('/') == std::string::npos);
      CHECK(b64url_decode(encoded) == data);
    }
  }

  TEST_CASE("base64url rejects bad input") {
    CHECK_THROWS_AS(b64url_decode("a==="), Error);
    CHECK_THROWS_AS(b64url_decode("a!b"), Error);
    CHECK_THROWS_AS(b64url_decode("a"), Error);  // 1 mod 4 length
  }

  TEST_CASE("hex round trip") {
    Bytes data{0x00, 0x01, 0xab, 0xff};
    CHECK(hex_encode(data) == "0001abff");
    CHECK(hex_decode("0001abff") == data);
    CHECK_THROWS_AS(hex_decode("abc"), Error);
    CHECK_THROWS_AS(hex_decode("zz"), Error);
  }
}

TEST_SUITE("digest") {
  TEST_CASE("empty input matches the frozen vector") {
    CHECK(sha256(std::string_view("")).hex() ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  }

  TEST_CASE("agrees with the independent oracle on random strings") {
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
      std::string s = to_string(rng.bytes(i * 3 % 129));
      CHECK(sha256(std::string_view(s)).hex() == oracle::sha256_hex(s));
    }
  }

  TEST_CASE("hex form is 64 lowercase chars, round-trips") {
    Digest d = sha256(std::string_view("x"));
    CHECK(d.hex().size() == 64);
    for (char c : d.hex()) CHECK((std::islower(c) || std::isdigit(c)));
    CHECK(Digest::from_hex(d.hex()) == d);
  }
}

TEST_SUITE("jwk") {
  TEST_CASE("sign/verify round trip and tamper rejection") {
    Rng rng(3);
    Jwk key = generate_key("k1", rng);
    Bytes msg = to_bytes("hello federation");
    Bytes sig = sign_bytes(key, msg);
    CHECK(verify_bytes(key.public_only(), msg, sig));

    SUBCASE("message mutation fails") {
      Bytes bad = msg;
      bad[0] ^= 0x01;
      CHECK_FALSE(verify_bytes(key.public_only(), bad, sig));
    }
    SUBCASE("signature mutation fails") {
      Bytes bad = sig;
      bad[10] ^= 0x80;
      CHECK_FALSE(verify_bytes(key.public_only(), msg, bad));
    }
  }

  TEST_CASE("verify(pub(k), m, sign(k, m)) holds for many keys and messages") {
    Rng rng(4);
    for (int i = 0; i < 25; ++i) {
      Jwk key = generate_key("k" + std::to_string(i), rng);
      Bytes msg = rng.bytes(1 + i * 7 % 90);
      CHECK(verify_bytes(key.public_only(), msg, sign_bytes(key, msg)));
    }
  }

  TEST_CASE("signing needs private material") {
    Rng rng(5);
    Jwk key = generate_key("k", rng).public_only();
    CHECK_THROWS_AS(sign_bytes(key, to_bytes("m")), Error);
    try {
      sign_bytes(key, to_bytes("m"));
    } catch (const Error& e) {
      CHECK(e.code() == Errc::SigningKeyUnavailable);
    }
  }

  TEST_CASE("deterministic generation from a seed") {
    Rng a(42), b(42);
    CHECK(generate_key("k", a).public_material ==
          generate_key("k", b).public_material);
  }

  TEST_CASE("key directory persistence") {
    Rng rng(6);
    Jwk key = generate_key("persisted", rng);
    auto dir = std::filesystem::temp_directory_path() / "ssibridge-keys-test";
    std::filesystem::remove_all(dir);
    save_key(dir.string(), key, true);
    Jwk loaded = load_key((dir / "persisted.json").string());
    CHECK(loaded.key_id == key.key_id);
    CHECK(loaded.public_material == key.public_material);
    CHECK(loaded.private_material == key.private_material);

    save_key(dir.string(), key, false);
    Jwk public_loaded = load_key((dir / "persisted.json").string());
    CHECK_FALSE(public_loaded.has_private());
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("unknown suite is rejected") {
    Jwk key{"k", "no-such-suite", Bytes(32, 0), Bytes(64, 0)};
    CHECK_THROWS_AS(sign_bytes(key, to_bytes("m")), Error);
  }
}

TEST_SUITE("signed token") {
  TEST_CASE("round trip preserves bytes and claims") {
    Rng rng(7);
    Jwk key = generate_key("issuer", rng);
    json payload{{"iss", "me"}, {"n", 42}};
    SignedToken token = SignedToken::sign(key, payload, "test");
    SignedToken parsed = SignedToken::parse(token.compact());
    CHECK(parsed.compact() == token.compact());
    CHECK(parsed.payload() == payload);
    CHECK(parsed.kid() == "issuer");
    CHECK(parsed.verify(key.public_only()));
  }

  TEST_CASE("verification fails under the wrong key") {
    Rng rng(8);
    Jwk key = generate_key("a", rng);
    Jwk other = generate_key("b", rng);
    SignedToken token = SignedToken::sign(key, json{{"x", 1}}, "test");
    CHECK_FALSE(token.verify(other.public_only()));
  }

  TEST_CASE("malformed compact forms are rejected") {
    CHECK_THROWS_AS(SignedToken::parse("onlyonepart"), Error);
    CHECK_THROWS_AS(SignedToken::parse("a.b"), Error);
    CHECK_THROWS_AS(SignedToken::parse("!!.??.##"), Error);
  }

  TEST_CASE("extra header fields are carried") {
    Rng rng(9);
    Jwk key = generate_key("k", rng);
    SignedToken token =
        SignedToken::sign(key, json{{"a", 1}}, "t", json{{"jwk", "stub"}});
    CHECK(token.header().at("jwk") == "stub");
    CHECK(SignedToken::parse(token.compact()).header().at("jwk") == "stub");
  }
}

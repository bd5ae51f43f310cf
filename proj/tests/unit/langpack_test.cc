// mlas/tests/unit/langpack_test.cc
//
// Copyright 2026 The mlas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "mlas/common/errors.h"
#include "mlas/common/utf8.h"
#include "mlas/langpack/registry.h"
#include "mlas/langpack/vocab.h"

namespace mlas {
namespace {

LanguageSpec spec(std::string id, std::vector<std::string> graphemes) {
  return {id, "Language " + id, std::move(graphemes)};
}

// A: {a b c x}, B: {x y z d}, C: {p q r}; x is shared by A and B.
std::vector<LanguageSpec> toyRegistry() {
  return {spec("A", {"a", "b", "c", "x"}), spec("B", {"x", "y", "z", "d"}),
          spec("C", {"p", "q", "r"})};
}

TEST(UnionVocabTest, DisjointUnionSize) {
  auto v = UnionVocab::build({spec("A", {"a", "b", "c"}), spec("B", {"d", "e", "f", "g"})});
  EXPECT_EQ(v.size(), 4u + 7u);
  EXPECT_EQ(v.token(UnionVocab::kPad), "<pad>");
  EXPECT_EQ(v.token(UnionVocab::kSos), "<sos>");
  EXPECT_EQ(v.token(UnionVocab::kEos), "<eos>");
  EXPECT_EQ(v.token(UnionVocab::kSpace), " ");
}

TEST(UnionVocabTest, IdenticalSetsMergeWithDoubleMembership) {
  std::vector<std::string> g = {"क", "ख", "ग", "घ", "ङ"};
  auto v = UnionVocab::build({spec("hi", g), spec("mr", g)});
  EXPECT_EQ(v.size(), 4u + 5u);
  for (int i = UnionVocab::kNumSpecials; i < static_cast<int>(v.size()); ++i) {
    EXPECT_EQ(v.membership(i), (std::set<std::string>{"hi", "mr"}));
  }
}

TEST(UnionVocabTest, TokensSortedByCodepointAndBijective) {
  auto v = UnionVocab::build({spec("A", {"z", "b", "क"}), spec("B", {"a", "ব"})});
  std::vector<char32_t> cps;
  for (std::size_t i = UnionVocab::kNumSpecials; i < v.size(); ++i) {
    cps.push_back(utf8::decode(v.token(static_cast<int>(i)))[0]);
  }
  EXPECT_TRUE(std::is_sorted(cps.begin(), cps.end()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_EQ(v.find(v.token(static_cast<int>(i))), static_cast<int>(i));
  }
}

TEST(UnionVocabTest, PermutingSpecsGivesIdenticalTokensAndMembership) {
  auto specs = toyRegistry();
  auto reference = UnionVocab::build(specs);
  std::sort(specs.begin(), specs.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  do {
    auto v = UnionVocab::build(specs);
    EXPECT_EQ(v.tokens(), reference.tokens());
    EXPECT_EQ(v.fingerprint(), reference.fingerprint());
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_EQ(v.membership(static_cast<int>(i)),
                reference.membership(static_cast<int>(i)));
    }
  } while (std::next_permutation(specs.begin(), specs.end(), [](const auto& a, const auto& b) {
    return a.id < b.id;
  }));
}

TEST(UnionVocabTest, EveryNonSpecialTokenHasMembership) {
  auto v = UnionVocab::build(toyRegistry());
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_EQ(v.membership(static_cast<int>(i)).empty(), i < UnionVocab::kNumSpecials);
  }
}

TEST(UnionVocabTest, Errors) {
  EXPECT_THROW(UnionVocab::build(std::vector<LanguageSpec>{}), InvalidArgument);
  EXPECT_THROW(UnionVocab::build({spec("A", {"a"}), spec("A", {"b"})}), RegistryError);
  EXPECT_THROW(UnionVocab::build({spec("A", {})}), InvalidSpec);
  EXPECT_THROW(UnionVocab::build({spec("A", {"a", "a"})}), InvalidSpec);
  EXPECT_THROW(UnionVocab::build({spec("A", {"ab"})}), InvalidSpec);
  EXPECT_THROW(UnionVocab::build({spec("A", {" "})}), InvalidSpec);
}

TEST(ClassifyWordTest, SingleScriptWord) {
  auto v = UnionVocab::build(toyRegistry());
  EXPECT_EQ(classifyWord("cab", v, "A"), ScriptLabel::language("A"));
  EXPECT_EQ(classifyWord("pqr", v, "C"), ScriptLabel::language("C"));
}

TEST(ClassifyWordTest, WrongScriptFallsBackToCoveringLanguage) {
  auto v = UnionVocab::build(toyRegistry());
  EXPECT_EQ(classifyWord("pq", v, "A"), ScriptLabel::language("C"));
}

TEST(ClassifyWordTest, MixingDisjointScriptsIsMixed) {
  auto v = UnionVocab::build(toyRegistry());
  EXPECT_EQ(classifyWord("ap", v, "A"), ScriptLabel::mixed());
  EXPECT_EQ(classifyWord("ap", v, "A").str(), "mixed");
}

TEST(ClassifyWordTest, SharedSubsetPrefersTruthLanguage) {
  // Covering sets for "xx": {A, B}. Truth is tested first, otherwise
  // registry order decides.
  auto v = UnionVocab::build(toyRegistry());
  EXPECT_EQ(classifyWord("xx", v, "B"), ScriptLabel::language("B"));
  EXPECT_EQ(classifyWord("xx", v, "A"), ScriptLabel::language("A"));
  EXPECT_EQ(classifyWord("xx", v, "C"), ScriptLabel::language("A"));
  EXPECT_EQ(classifyWord("xy", v, "A"), ScriptLabel::language("B"));
}

TEST(ClassifyWordTest, UnknownGraphemeIsOov) {
  auto v = UnionVocab::build(toyRegistry());
  EXPECT_EQ(classifyWord("aw", v, "A"), ScriptLabel::outOfVocabulary());
  EXPECT_EQ(classifyWord("aw", v, "A").str(), "out-of-vocabulary");
}

TEST(ClassifyWordTest, Errors) {
  auto v = UnionVocab::build(toyRegistry());
  EXPECT_THROW(classifyWord("a", v, "Z"), RegistryError);
  EXPECT_THROW(classifyWord("", v, "A"), InvalidArgument);
}

TEST(ClassifyWordTest, NeverMixedWhenOneCharsetCoversTheWord) {
  auto specs = toyRegistry();
  auto v = UnionVocab::build(specs);
  std::mt19937 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto& lang = specs[rng() % specs.size()];
    std::string word;
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < len; ++k) word += lang.graphemes[rng() % lang.graphemes.size()];
    for (const auto& truth : specs) {
      EXPECT_EQ(classifyWord(word, v, truth.id).kind(), ScriptLabel::Kind::kLanguage);
    }
  }
}

TEST(TranscriptCodingTest, EmptyRoundTrip) {
  auto v = UnionVocab::build(toyRegistry());
  EXPECT_TRUE(v.encode("").empty());
  EXPECT_EQ(v.decode(std::vector<int>{}), "");
}

TEST(TranscriptCodingTest, SingleGrapheme) {
  auto v = UnionVocab::build(toyRegistry());
  EXPECT_EQ(v.encode("q"), std::vector<int>{*v.find("q")});
}

TEST(TranscriptCodingTest, RandomStringsRoundTrip) {
  std::vector<LanguageSpec> specs = {spec("dev", {"क", "ख", "ग", "घ"}),
                                     spec("tam", {"க", "ங", "ச", "ஞ"}),
                                     spec("lat", {"a", "b", "c"})};
  auto v = UnionVocab::build(specs);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    for (int k = 0; k < 20; ++k) {
      const int t = UnionVocab::kSpace + static_cast<int>(rng() % (v.size() - 3));
      text += v.token(t);
    }
    auto tokens = v.encode(text);
    EXPECT_EQ(tokens.size(), 20u);
    EXPECT_EQ(v.decode(tokens), text);
  }
}

TEST(TranscriptCodingTest, OovErrorCarriesCodepointAndPosition) {
  auto v = UnionVocab::build(toyRegistry());
  try {
    v.encode("ab w");
    FAIL() << "expected OovError";
  } catch (const OovError& e) {
    EXPECT_EQ(e.codepoint(), U'w');
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(v.decode(std::vector<int>{99}), InvalidArgument);
}

TEST(RegistryTest, SerializeParseSerializeIsByteIdentical) {
  LanguageRegistry registry({spec("dev", {"क", "ख"}), spec("ara", {"ب", "ت", "ث"})});
  const std::string first = registry.serialize();
  LanguageRegistry parsed = LanguageRegistry::parse(first);
  EXPECT_EQ(parsed, registry);
  EXPECT_EQ(parsed.serialize(), first);
}

TEST(RegistryTest, ParseRejectsUnknownKeysAndBadContent) {
  EXPECT_THROW(LanguageRegistry::parse("{"), FormatError);
  EXPECT_THROW(LanguageRegistry::parse(
                   R"({"format":"mlas-language-registry","version":1,"languages":[],"x":1})"),
               FormatError);
  EXPECT_THROW(
      LanguageRegistry::parse(
          R"({"format":"mlas-language-registry","version":1,"languages":[)"
          R"({"id":"a","display_name":"A","graphemes":["x"]},)"
          R"({"id":"a","display_name":"A2","graphemes":["y"]}]})"),
      RegistryError);
}

TEST(RegistryTest, SubsetKeepsRegistryOrder) {
  LanguageRegistry registry(toyRegistry());
  auto sub = registry.subset({"C", "A"});
  EXPECT_EQ(sub.ids(), (std::vector<std::string>{"A", "C"}));
  EXPECT_THROW(registry.subset({"Q"}), RegistryError);
}

}  // namespace
}  // namespace mlas

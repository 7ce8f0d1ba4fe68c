#include <set>

#include <gtest/gtest.h>

#include "kgapp/io.hpp"
#include "kgapp/preprocess.hpp"
#include "kgapp/unicode.hpp"
#include "test_support.hpp"

namespace kgapp {
namespace {

std::vector<std::string> Surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

using Words = std::vector<std::string>;

TEST(Tokenize, WordsAndPunctuation) {
  EXPECT_EQ(Surfaces(Tokenize("I love dogs.")), (Words{"I", "love", "dogs", "."}));
}

TEST(Tokenize, HyphenSplitsWords) {
  EXPECT_EQ(Surfaces(Tokenize("state-of-the-art")), (Words{"state", "-", "of", "-", "the", "-", "art"}));
}

TEST(Tokenize, EmptyText) { EXPECT_TRUE(Tokenize("").empty()); }

TEST(Tokenize, SpansAreByteOffsetsIntoSource) {
  const std::string text = "Café  crème, naïve!";
  for (const auto& t : Tokenize(text)) EXPECT_EQ(text.substr(t.start, t.end - t.start), t.surface);
  EXPECT_EQ(Surfaces(Tokenize(text)), (Words{"Café", "crème", ",", "naïve", "!"}));
}

TEST(RemoveNoise, StopwordsAndPunctuation) {
  EXPECT_EQ(Surfaces(RemoveNoise(Tokenize("I love dogs."), {"i"})), (Words{"love", "dogs"}));
}

TEST(RemoveNoise, AllStopwords) {
  EXPECT_TRUE(RemoveNoise(Tokenize("the a of"), {"the", "a", "of"}).empty());
}

TEST(RemoveNoise, MixedSentence) {
  const auto kept = RemoveNoise(Tokenize("Honestly, the museum was the best part of my week!"),
                                DefaultStopwords());
  EXPECT_EQ(Surfaces(kept), (Words{"Honestly", "museum", "best", "part", "week"}));
}

TEST(Normalize, LemmaLookupAfterLowercase) {
  EXPECT_EQ(Surfaces(Normalize(Tokenize("Dogs"), {{"dogs", "dog"}})), (Words{"dog"}));
}

TEST(Normalize, IdentityFallbackLowercases) {
  EXPECT_EQ(Surfaces(Normalize(Tokenize("Running"), {})), (Words{"running"}));
}

TEST(Normalize, KeepsSpans) {
  const auto out = Normalize(Tokenize("big Cats"), {{"cats", "cat"}});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].start, 4u);
  EXPECT_EQ(out[1].end, 8u);
}

TEST(RecognizeEntities, LongestMatchWins) {
  const Gazetteer g({"New York", "New York City"});
  EXPECT_EQ(Surfaces(RecognizeEntities("I visited New York City", g)), (Words{"New York City"}));
}

TEST(RecognizeEntities, NoHits) {
  EXPECT_TRUE(RecognizeEntities("nothing to see here", Gazetteer({"Paris"})).empty());
}

TEST(RecognizeEntities, CaseInsensitiveKeepsSourceSurface) {
  const auto e = RecognizeEntities("we love new york", Gazetteer({"New York"}));
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].surface, "new york");
  EXPECT_EQ(CanonicalizeKey(e[0].surface), "New_york");
}

// Brute-force matcher over whitespace-separated words: at each word try
// every span length from longest to shortest.
Words OracleMatches(const std::string& text, const std::vector<std::string>& names) {
  Words words;
  for (auto w : io::Split(text, ' ')) words.emplace_back(w);
  std::set<std::string> lower;
  for (const auto& n : names) lower.insert(unicode::ToLower(n));
  Words out;
  for (std::size_t i = 0; i < words.size();) {
    std::size_t take = 0;
    for (std::size_t len = words.size() - i; len >= 1 && take == 0; --len) {
      std::string cand;
      for (std::size_t k = 0; k < len; ++k) cand += (k ? " " : "") + words[i + k];
      if (lower.contains(unicode::ToLower(cand))) {
        take = len;
        out.push_back(cand);
      }
    }
    i += take ? take : 1;
  }
  return out;
}

TEST(RecognizeEntities, OverlappingCandidatesMatchOracle) {
  const std::vector<std::string> names = {"New York", "York City", "New York City Ballet", "City Ballet",
                                          "Ballet", "San Francisco", "Francisco Goya", "Goya"};
  const std::vector<std::string> texts = {
      "we saw New York City Ballet and York City",
      "San Francisco Goya exhibits Goya and City Ballet",
      "New York York City Ballet New York City",
      "nothing here at all",
  };
  const Gazetteer g(names);
  for (const auto& t : texts) EXPECT_EQ(Surfaces(RecognizeEntities(t, g)), OracleMatches(t, names)) << t;
}

TEST(RecognizeEntities, CapitalizedSpansWhenEnabled) {
  EntityOptions opts;
  opts.capitalized_spans = true;
  const auto e = RecognizeEntities("yesterday Pablo Picasso painted", Gazetteer{}, opts);
  EXPECT_EQ(Surfaces(e), (Words{"Pablo Picasso"}));
}

TEST(CanonicalizeKey, FirstCodePointOnly) {
  EXPECT_EQ(CanonicalizeKey("new york"), "New_york");
  EXPECT_EQ(CanonicalizeKey("élan"), "Élan");
  EXPECT_EQ(CanonicalizeKey("iPhone"), "IPhone");
}

TEST(BuildConceptSet, SentenceWithEntity) {
  const EssayRecord e{"x", "I love New York pizza", {}};
  const auto set = BuildConceptSet(e, DefaultStopwords(), {}, Gazetteer({"New York"}));
  EXPECT_EQ(set.concepts, (Words{"Love", "New_York", "Pizza"}));
  EXPECT_EQ(set.essay_id, "x");
}

TEST(BuildConceptSet, DuplicatesCollapse) {
  const EssayRecord e{"x", "Pizza and more pizza, then pizzas.", {}};
  const auto set = BuildConceptSet(e, DefaultStopwords(), {{"pizzas", "pizza"}}, Gazetteer{});
  EXPECT_EQ(std::count(set.concepts.begin(), set.concepts.end(), "Pizza"), 1);
}

TEST(BuildConceptSet, AllStopwordsGiveEmptySet) {
  const EssayRecord e{"x", "I and the of.", {}};
  EXPECT_TRUE(BuildConceptSet(e, DefaultStopwords(), {}, Gazetteer{}).concepts.empty());
}

TEST(BuildConceptSet, ToyEssayThroughDefaultAnalyzer) {
  PreprocessResources r;
  r.stopwords = DefaultStopwords();
  r.lemmas = LoadLemmaTable(testing::ToyDir() / "lemmas.tsv");
  r.gazetteer = LoadGazetteer(testing::ToyDir() / "gazetteer.txt");
  const DefaultAnalyzer analyzer(std::move(r));
  const EssayRecord e{"t", "Yesterday we talked about Pablo Picasso and museums.", {}};
  const auto set = analyzer.BuildConceptSet(e);
  EXPECT_NE(std::find(set.concepts.begin(), set.concepts.end(), "Pablo_Picasso"), set.concepts.end());
  EXPECT_NE(std::find(set.concepts.begin(), set.concepts.end(), "Museum"), set.concepts.end());
  EXPECT_EQ(std::find(set.concepts.begin(), set.concepts.end(), "Pablo"), set.concepts.end());
}

TEST(Detokenize, UnderscoresBecomeSpaces) {
  ConceptSet s{"x", {"New_York", "Pizza"}};
  EXPECT_EQ(Detokenize(s), "New York Pizza");
}

}  // namespace
}  // namespace kgapp

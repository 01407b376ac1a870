// Copyright 2026 The ECHO Authors.
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

#include <gtest/gtest.h>

#include "echo/lexicon.h"
#include "echo/text.h"

namespace echo {
namespace {

TEST(Tokenize, SpansReproduceSurface) {
  const std::string text = "I can't sleep → exams, deadlines… and “stress”!";
  const std::vector<Token> tokens = Tokenize(text);
  ASSERT_FALSE(tokens.empty());
  for (const Token &t : tokens) {
    EXPECT_EQ(text.substr(t.span.start, t.span.length()), t.text);
  }
  EXPECT_EQ(tokens[1].text, "can't");
  EXPECT_TRUE(tokens[1].is_word());
}

TEST(Tokenize, MultiBytePunctuationIsOneToken) {
  const std::vector<Token> tokens = Tokenize("a → b");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[1].kind, TokenKind::kPunct);
  EXPECT_EQ(tokens[1].text, "→");
}

TEST(Tokenize, SentenceInitialAndCapitalization) {
  const std::vector<Token> tokens = Tokenize("Work is hard. Then NASA called Mary.");
  EXPECT_TRUE(tokens[0].sentence_initial);
  EXPECT_FALSE(tokens[1].sentence_initial);
  EXPECT_TRUE(tokens[4].sentence_initial);  // "Then"
  EXPECT_TRUE(tokens[5].all_caps);
  EXPECT_TRUE(tokens[7].capitalized);
  EXPECT_FALSE(tokens[7].sentence_initial);
}

TEST(Tokenize, NumbersAreNumberTokens) {
  const std::vector<Token> tokens = Tokenize("3-5 times");
  ASSERT_GE(tokens.size(), 3u);
  EXPECT_EQ(tokens[0].kind, TokenKind::kNumber);
  EXPECT_EQ(tokens[0].text, "3");
}

TEST(Tokenize, EmptyInput) { EXPECT_TRUE(Tokenize("").empty()); }

TEST(Text, LowerAndTrim) {
  EXPECT_EQ(ToLower("MiXeD Case"), "mixed case");
  EXPECT_EQ(Trim("  x y \n"), "x y");
  EXPECT_EQ(Trim("   "), "");
}

TEST(Lemmatize, SuffixRules) {
  EXPECT_EQ(Lemmatize("deadlines"), "deadline");
  EXPECT_EQ(Lemmatize("worries"), "worry");
  EXPECT_EQ(Lemmatize("boxes"), "box");
  EXPECT_EQ(Lemmatize("talking"), "talk");
  EXPECT_EQ(Lemmatize("worked"), "work");
  EXPECT_EQ(Lemmatize("stress"), "stress");
  EXPECT_EQ(Lemmatize("anxious"), "anxious");
  // Short stems are left alone.
  EXPECT_EQ(Lemmatize("bus"), "bus");
  EXPECT_EQ(Lemmatize("sing"), "sing");
  EXPECT_EQ(Lemmatize("red"), "red");
}

TEST(Text, Negators) {
  EXPECT_TRUE(IsNegator("not"));
  EXPECT_TRUE(IsNegator("never"));
  EXPECT_TRUE(IsNegator("no"));
  EXPECT_TRUE(IsNegator("don't"));
  EXPECT_FALSE(IsNegator("note"));
}

TEST(Text, Stopwords) {
  EXPECT_TRUE(IsStopword("the"));
  EXPECT_TRUE(IsStopword("and"));
  EXPECT_FALSE(IsStopword("money"));
}

TEST(Text, NumberWords) {
  EXPECT_EQ(NumberWordValue("zero"), 0);
  EXPECT_EQ(NumberWordValue("four"), 4);
  EXPECT_EQ(NumberWordValue("twenty"), 20);
  EXPECT_EQ(NumberWordValue("banana"), -1);
}

TEST(Lexicon, ParseTsv) {
  auto entries = ParseTsv("# comment\n\nHello\t0.5\nworld\tx\n", "t");
  ASSERT_TRUE(entries.ok());
  ASSERT_EQ(entries->size(), 2u);
  EXPECT_EQ((*entries)[0].term, "hello");
  EXPECT_EQ((*entries)[0].value, "0.5");
  EXPECT_EQ((*entries)[0].line, 3);
}

TEST(Lexicon, ParseTsvRejectsMissingTab) {
  EXPECT_FALSE(ParseTsv("hello 0.5\n", "t").ok());
}

TEST(Lexicon, ParseNumber) {
  EXPECT_DOUBLE_EQ(*ParseNumber("0.25"), 0.25);
  EXPECT_DOUBLE_EQ(*ParseNumber("1/14"), 1.0 / 14);
  EXPECT_FALSE(ParseNumber("1/0").ok());
  EXPECT_FALSE(ParseNumber("abc").ok());
}

TEST(Lexicon, ReadFileMissing) {
  EXPECT_FALSE(ReadFile("/nonexistent/file").ok());
}

}  // namespace
}  // namespace echo

#include <doctest.h>

#include "x1/error.hpp"
#include "x1/langid.hpp"

using namespace x1;

namespace {

std::string detect(std::string_view s) { return detect_language(s).language.name(); }

} // namespace

TEST_SUITE("langid") {

TEST_CASE("single-script languages") {
  CHECK(detect("สวัสดีครับ วันนี้อากาศดีมาก") == "Thai");
  CHECK(detect("안녕하세요 오늘 날씨가 좋네요") == "Korean");
  CHECK(detect("Γεια σας, τι κάνετε σήμερα;") == "Greek");
  CHECK(detect("שלום, מה שלומך היום?") == "Hebrew");
  CHECK(detect("আমি আজ বাজারে যাব এবং কিছু ফল কিনব।") == "Bengali");
  CHECK(detect("मैं आज बाजार जाऊंगा और कुछ फल खरीदूंगा।") == "Hindi");
}

TEST_CASE("CJK split by kana") {
  CHECK(detect("我们先计算苹果的总数，然后减去送出的数量。") == "Chinese");
  CHECK(detect("まずりんごの合計を計算して、それから残りを求めます。") == "Japanese");
}

TEST_CASE("Cyrillic and Arabic markers") {
  CHECK(detect("Сначала найдём общее количество яблок, потом вычтем отданные.") == "Russian");
  CHECK(detect("Спочатку знайдемо загальну кількість яблук, які вона має.") == "Ukrainian");
  CHECK(detect("Първо трябва да намерим общия брой ябълки, които тя има.") == "Bulgarian");
  CHECK(detect("أولاً نحسب العدد الكلي للتفاح ثم نطرح ما أعطته لأصدقائها.") == "Arabic");
  CHECK(detect("پہلے ہمیں سیبوں کی کل تعداد معلوم کرنی ہے جو اس کے پاس ہیں۔") == "Urdu");
}

TEST_CASE("Latin-script languages") {
  CHECK(detect("First we need to find the total number of apples that she has.") == "English");
  CHECK(detect("Zuerst müssen wir die Gesamtzahl der Äpfel finden, die sie hat.") == "German");
  CHECK(detect("Primero necesitamos encontrar el número total de manzanas que tiene.") ==
        "Spanish");
  CHECK(detect("D'abord, nous devons trouver le nombre total de pommes qu'elle possède.") ==
        "French");
  CHECK(detect("Kwanza tunahitaji kupata jumla ya matufaha aliyonayo.") == "Swahili");
  CHECK(detect("Najpierw musimy znaleźć całkowitą liczbę jabłek, które ona ma.") == "Polish");
  CHECK(detect("Trước tiên chúng ta cần tìm tổng số táo mà cô ấy có.") == "Vietnamese");
}

TEST_CASE("confidence and indeterminate input") {
  const auto g = detect_language("Let me think about this problem step by step.");
  CHECK(g.confidence > 0.0);
  CHECK(g.confidence <= 1.0);
  CHECK(g.method == DetectMethod::script_heuristic);
  CHECK_THROWS_AS(detect_language(""), Indeterminate);
  CHECK_THROWS_AS(detect_language("12 + 30 = 42"), Indeterminate);
  CHECK_FALSE(LanguageDetector().try_detect("   "));
}

TEST_CASE("sentence segmentation") {
  CHECK(segment_sentences("One. Two!  Three?") ==
        std::vector<std::string>{"One.", "Two!", "Three?"});
  CHECK(segment_sentences("Pi is 3.14 exactly. Yes") ==
        std::vector<std::string>{"Pi is 3.14 exactly.", "Yes"});
  CHECK(segment_sentences("真的吗？是的。好") == std::vector<std::string>{"真的吗？", "是的。", "好"});
  CHECK(segment_sentences("Really?! Yes\nNo") ==
        std::vector<std::string>{"Really?!", "Yes", "No"});
  CHECK(segment_sentences("").empty());
}

TEST_CASE("mixing profile") {
  const auto en = english();
  auto p = mixing_profile("This is English. Dies ist ein deutscher Satz mit vielen Wörtern. "
                          "Another English sentence here.",
                          en);
  CHECK(p.sentence_count == 3);
  CHECK(p.mixed_sentences == 1);
  CHECK(p.mixing_rate == doctest::Approx(1.0 / 3.0));

  p = mixing_profile("We add the numbers. 12 + 30 = 42.", en);
  CHECK(p.mixed_sentences == 0);
  CHECK(mixing_profile("", en).mixing_rate == 0.0);
}

TEST_CASE("compliance flags") {
  Trajectory t;
  t.trace = "Nous devons d'abord trouver le nombre total de pommes qu'elle possède.";
  t.answer = "The answer is 42.";
  auto f = compliance_flags(t, canonical_language("fr"), english());
  CHECK(f.thinking);
  CHECK(f.answer);
  CHECK(f.both);

  f = compliance_flags(t, canonical_language("de"), english());
  CHECK_FALSE(f.thinking);
  CHECK_FALSE(f.both);

  t.answer = "42";
  CHECK(compliance_flags(t, canonical_language("fr"), canonical_language("th")).answer);
  t.answer = "";
  CHECK_FALSE(compliance_flags(t, canonical_language("fr"), english()).answer);
}

}

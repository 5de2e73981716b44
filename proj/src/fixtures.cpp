// SPDX-License-Identifier: Apache-2.0
#include "sumaug/fixtures.hpp"

#include <array>
#include <vector>

#include "sumaug/error.hpp"
#include "sumaug/random.hpp"

namespace sumaug {

FixtureShape reflection_fixture_shape() {
  FixtureShape s;
  s.documents = 368;
  s.groups = 4;
  s.mean_units = 44;
  s.unit_spread = 10;
  s.train = 294;
  s.val = 37;
  s.test = 37;
  return s;
}

FixtureShape review_fixture_shape() {
  FixtureShape s;
  s.documents = 160;
  s.groups = 4;
  s.mean_units = 8;
  s.unit_spread = 0;
  s.train = 58;
  s.val = 42;
  s.test = 60;
  s.reviews = true;
  return s;
}

FixtureShape toy_fixture_shape() {
  FixtureShape s;
  s.documents = 16;
  s.groups = 4;
  s.mean_units = 4;
  s.unit_spread = 1;
  s.train = 16;
  s.val = 0;
  s.test = 0;
  return s;
}

FixtureShape small_fixture_shape() { return FixtureShape{}; }

FixtureShape fixture_shape(std::string_view name) {
  if (name == "cm" || name == "reflections") return reflection_fixture_shape();
  if (name == "ay" || name == "reviews") return review_fixture_shape();
  if (name == "toy") return toy_fixture_shape();
  if (name == "small") return small_fixture_shape();
  throw ConfigError("unknown fixture shape '" + std::string(name) + "'");
}

namespace {

struct Theme {
  std::string group;
  std::vector<std::string> topics;
};

const std::vector<Theme>& course_themes() {
  static const std::vector<Theme> t = {
      {"cs0445", {"bags", "arrays", "linked lists", "stacks", "queues", "recursion", "sorting", "hashing",
                  "trees", "iterators"}},
      {"engr-stat", {"probability", "variance", "sampling", "hypothesis tests", "regression",
                     "confidence intervals", "distributions", "outliers", "correlation", "histograms"}},
      {"engr-mat", {"crystal structures", "dislocations", "phase diagrams", "stress", "strain",
                    "diffusion", "polymers", "ceramics", "fracture", "alloys"}},
      {"phys", {"momentum", "energy", "torque", "friction", "oscillations", "waves", "circuits",
                "magnetism", "optics", "gravity"}},
      {"chem", {"bonding", "equilibrium", "kinetics", "acids", "titration", "orbitals", "entropy",
                "enthalpy", "solubility", "isomers"}},
      {"bio", {"cells", "enzymes", "genetics", "mitosis", "evolution", "proteins", "membranes",
               "ecosystems", "respiration", "photosynthesis"}},
  };
  return t;
}

const std::vector<Theme>& product_themes() {
  static const std::vector<Theme> t = {
      {"jewelry", {"necklace", "pendant", "bracelet", "earrings", "chain", "ring", "charm", "locket",
                   "anklet", "brooch"}},
      {"restaurant", {"pizza", "sushi", "burgers", "tacos", "pasta", "brunch", "noodles", "salads",
                      "steak", "dessert"}},
      {"electronics", {"headphones", "charger", "speaker", "keyboard", "phone case", "tablet", "camera",
                       "router", "monitor", "mouse"}},
      {"home", {"blender", "vacuum", "lamp", "pillow", "blanket", "kettle", "cookware", "towels",
                "curtains", "mattress"}},
      {"outdoor", {"tent", "backpack", "boots", "jacket", "flashlight", "cooler", "hammock",
                   "sleeping bag", "water bottle", "trekking poles"}},
  };
  return t;
}

const std::string& pick(const std::vector<std::string>& v, Rng& rng) { return v[rng.below(v.size())]; }

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string reflection_unit(const std::string& topic, const std::string& other, Rng& rng) {
  static const std::vector<std::string> adjectives = {"interesting", "confusing", "helpful", "difficult",
                                                      "easy", "important", "engaging", "useful"};
  static const std::vector<std::string> vague = {"Nothing.", "Everything is easy.", "Nothing really.",
                                                 "All good.", "Nothing was confusing."};
  const std::string& adj = pick(adjectives, rng);
  switch (rng.below(9)) {
    case 0: return "I found " + topic + " the most " + adj + ".";
    case 1: return "Learning about " + topic + " was very " + adj + ".";
    case 2: return "the " + topic;
    case 3: return "The examples of " + topic + " on the whiteboard were " + adj + ".";
    case 4: return "How " + topic + " relates to " + other + " was " + adj + " for me.";
    case 5: return "I want more practice problems on " + topic + " before the exam.";
    case 6: return capitalize(topic) + " and " + other + " were " + adj + " today.";
    case 7: return "The discussion of " + topic + " in lecture was " + adj + ".";
    default: return pick(vague, rng);
  }
}

std::string review_unit(const std::string& topic, Rng& rng) {
  static const std::vector<std::string> praise = {"great", "beautiful", "cheap", "sturdy", "elegant",
                                                  "comfortable", "fast", "reliable"};
  static const std::vector<std::string> complaint = {"smaller than expected", "a bit noisy", "late to arrive",
                                                     "hard to clean", "overpriced"};
  switch (rng.below(7)) {
    case 0: return "The " + topic + " is " + pick(praise, rng) + " and I use it every day.";
    case 1: return "I bought this " + topic + " as a gift and she loves it.";
    case 2: return "Quality is " + pick(praise, rng) + " for the price, but it was " + pick(complaint, rng) + ".";
    case 3: return "Would recommend this " + topic + " to anyone.";
    case 4: return "My " + topic + " was " + pick(complaint, rng) + ", otherwise fine.";
    case 5: return "Great service and the " + topic + " looks just like the picture.";
    default: return "Overall I am happy with the " + topic + ".";
  }
}

std::string reflection_summary(const std::string& topic, const std::string& other, Rng& rng) {
  static const std::vector<std::string> closers = {
      "Some students wanted more examples.", "Others found the pace confusing.",
      "Many recognized how useful the concepts are.", "A few students asked for more practice."};
  return "Students were interested in " + topic + " and " + other + ". " + pick(closers, rng);
}

std::string review_summary(const std::string& topic, Rng& rng) {
  static const std::vector<std::string> closers = {
      "Overall, it is highly recommended.", "Some reviewers mentioned minor issues with delivery.",
      "It makes a great gift.", "Customers praised the quality for the price."};
  return "This " + topic + " is well made and looks great. " + pick(closers, rng);
}

}  // namespace

Corpus make_fixture(const FixtureShape& shape) {
  if (shape.train + shape.val + shape.test != shape.documents) {
    throw ConfigError("fixture split counts must add up to the document count");
  }
  if (shape.groups == 0 || shape.mean_units == 0 || shape.unit_spread >= shape.mean_units + 1) {
    throw ConfigError("fixture needs groups >= 1 and mean_units > unit_spread");
  }
  const auto& themes = shape.reviews ? product_themes() : course_themes();
  if (shape.groups > themes.size()) throw ConfigError("fixture supports at most " + std::to_string(themes.size()) + " groups");

  Rng rng(SeedBuilder(shape.seed).add("fixture").value());
  std::vector<std::vector<Sample>> per_group(shape.groups);
  for (std::size_t d = 0; d < shape.documents; ++d) {
    const std::size_t g = d % shape.groups;
    const Theme& theme = themes[g];
    const std::string& topic = pick(theme.topics, rng);
    std::string other = pick(theme.topics, rng);
    while (other == topic) other = pick(theme.topics, rng);

    Sample s;
    s.document.id = theme.group + "-" + std::to_string(d / shape.groups);
    s.document.group = theme.group;
    const std::size_t units = shape.mean_units - shape.unit_spread + rng.below(2 * shape.unit_spread + 1);
    for (std::size_t u = 0; u < units; ++u) {
      // most units talk about the document's own topics
      const std::string& t = rng.uniform() < 0.7 ? (rng.uniform() < 0.6 ? topic : other) : pick(theme.topics, rng);
      s.document.units.push_back({shape.reviews ? review_unit(t, rng) : reflection_unit(t, other, rng)});
    }
    s.summary = shape.reviews ? review_summary(topic, rng) : reflection_summary(topic, other, rng);
    per_group[g].push_back(std::move(s));
  }

  // deal splits round-robin across groups: train first, then val, then test
  Corpus corpus;
  std::array<std::size_t, 3> remaining{shape.train, shape.val, shape.test};
  std::vector<std::size_t> cursor(shape.groups, 0);
  for (int part = 0; part < 3; ++part) {
    auto& dest = corpus.split(static_cast<Split>(part));
    std::size_t g = 0;
    while (remaining[part] > 0) {
      if (cursor[g] < per_group[g].size()) {
        dest.push_back(per_group[g][cursor[g]++]);
        --remaining[part];
      }
      g = (g + 1) % shape.groups;
    }
  }
  return corpus;
}

}  // namespace sumaug

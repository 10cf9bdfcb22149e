#include "priv/synth/synthdata.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "priv/errors.hpp"
#include "priv/nn/net.hpp"
#include "priv/rng.hpp"
#include "priv/synth/wordlists.hpp"

namespace priv::synth {

namespace {

const char* kDomains[5] = {"example.com", "example.org", "example.net", "mail.test",
                           "inbox.test"};

std::string pad_digits(std::uint64_t value, int width) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%0*llu", width, static_cast<unsigned long long>(value));
  return buf;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

int luhn_sum(const std::string& digits) {
  int sum = 0;
  bool dbl = false;  // rightmost digit is not doubled
  for (std::size_t i = digits.size(); i-- > 0;) {
    int d = digits[i] - '0';
    if (dbl) {
      d *= 2;
      if (d > 9) d -= 9;
    }
    sum += d;
    dbl = !dbl;
  }
  return sum;
}

std::string make_card(Rng& rng) {
  std::string payload = "4";  // fixed network-style prefix keeps a nonzero lead
  for (int i = 0; i < 14; ++i) payload += static_cast<char>('0' + rng.below(10));
  for (char check = '0'; check <= '9'; ++check) {
    if (luhn_sum(payload + check) % 10 == 0) return payload + check;
  }
  throw InvariantError("no Luhn check digit exists");  // unreachable: mod 10 always solvable
}

std::string make_ssn(Rng& rng) {
  std::uint64_t area = 1 + rng.below(898);  // 1..898
  if (area >= 666) ++area;                  // skip 666, extend to 899
  const std::uint64_t group = 1 + rng.below(99);
  const std::uint64_t serial = 1 + rng.below(9999);
  return pad_digits(area, 3) + "-" + pad_digits(group, 2) + "-" + pad_digits(serial, 4);
}

std::string make_phone(Rng& rng) {
  const bool parens = rng.below(2) == 1;
  const std::uint64_t area = 200 + rng.below(800);
  const std::uint64_t exchange = 200 + rng.below(800);
  const std::uint64_t line = rng.below(10000);
  if (parens) {
    return "(" + pad_digits(area, 3) + ") " + pad_digits(exchange, 3) + "-" +
           pad_digits(line, 4);
  }
  return pad_digits(area, 3) + "-" + pad_digits(exchange, 3) + "-" + pad_digits(line, 4);
}

}  // namespace

double p_cond(double age_norm, double income_norm) {
  return nn::sigmoid(4.0 * (age_norm - 0.5) + 2.0 * (income_norm - 0.5));
}

Record make_record(std::uint64_t seed, std::uint64_t id) {
  Rng rng(counter_mix(seed, id));
  Record r;
  r.id = id;
  const char* first = first_names()[rng.below(first_names().size())];
  const char* last = last_names()[rng.below(last_names().size())];
  r.name = std::string(first) + " " + last;
  r.email = lower(first) + "." + lower(last) + std::to_string(rng.below(100)) + "@" +
            kDomains[rng.below(5)];
  r.ssn = make_ssn(rng);
  r.credit_card = make_card(rng);
  r.phone = make_phone(rng);
  r.age = 18 + static_cast<int>(rng.below(73));
  r.income = rng.uniform(10000.0, 200000.0);
  r.gender = static_cast<int>(rng.below(2));
  const Bounds b;
  const double p = p_cond(b.norm_age(r.age), b.norm_income(r.income));
  r.condition = rng.uniform() < p ? 1 : 0;
  return r;
}

Dataset generate(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw FormatError("generate: n must be at least 1");
  Dataset ds;
  ds.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ds.records.push_back(make_record(seed, i));
  return ds;
}

nn::Matrix Dataset::feature_view() const {
  nn::Matrix x(records.size(), kFeatureCount);
  for (std::size_t i = 0; i < records.size(); ++i) {
    x(i, 0) = bounds.norm_age(records[i].age);
    x(i, 1) = bounds.norm_income(records[i].income);
    x(i, 2) = records[i].gender;
  }
  return x;
}

nn::Matrix Dataset::label_view() const {
  nn::Matrix y(records.size(), 1);
  for (std::size_t i = 0; i < records.size(); ++i) y(i, 0) = records[i].condition;
  return y;
}

bool luhn_checksum(const std::string& digits) {
  if (digits.empty()) throw FormatError("luhn_checksum: empty input");
  for (char c : digits) {
    if (c < '0' || c > '9') throw FormatError("luhn_checksum: non-digit character");
  }
  return luhn_sum(digits) % 10 == 0;
}

namespace {

enum class Field { none, name, email, ssn, card, phone, age, income };

struct Piece {
  const char* literal;
  Field field;
};

using Template = std::vector<Piece>;

const std::vector<Template>& templates() {
  static const std::vector<Template> kTemplates = {
      {{nullptr, Field::name}, {"'s SSN is ", Field::none}, {nullptr, Field::ssn},
       {".", Field::none}},
      {{"Contact ", Field::none}, {nullptr, Field::name}, {" at ", Field::none},
       {nullptr, Field::email}, {".", Field::none}},
      {{nullptr, Field::name}, {" paid with card ", Field::none}, {nullptr, Field::card},
       {".", Field::none}},
      {{"Call ", Field::none}, {nullptr, Field::name}, {" at ", Field::none},
       {nullptr, Field::phone}, {".", Field::none}},
      {{nullptr, Field::name}, {", age ", Field::none}, {nullptr, Field::age},
       {", reported income ", Field::none}, {nullptr, Field::income}, {".", Field::none}},
      {{nullptr, Field::name}, {"'s phone number is ", Field::none}, {nullptr, Field::phone},
       {" and SSN is ", Field::none}, {nullptr, Field::ssn}, {".", Field::none}},
  };
  return kTemplates;
}

std::string field_value(const Record& r, Field f) {
  switch (f) {
    case Field::name: return r.name;
    case Field::email: return r.email;
    case Field::ssn: return r.ssn;
    case Field::card: return r.credit_card;
    case Field::phone: return r.phone;
    case Field::age: return std::to_string(r.age);
    case Field::income: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.2f", r.income);
      return buf;
    }
    case Field::none: break;
  }
  return {};
}

bool is_pii_field(Field f) {
  return f == Field::name || f == Field::email || f == Field::ssn || f == Field::card ||
         f == Field::phone;
}

pii::Kind field_kind(Field f) {
  switch (f) {
    case Field::name: return pii::Kind::name;
    case Field::email: return pii::Kind::email;
    case Field::ssn: return pii::Kind::ssn;
    case Field::card: return pii::Kind::credit_card;
    case Field::phone: return pii::Kind::phone;
    default: throw InvariantError("field has no pii kind");
  }
}

}  // namespace

std::size_t template_count() { return templates().size(); }

RenderedDoc render_text(const Record& r, std::size_t template_id) {
  if (template_id >= templates().size()) {
    throw FormatError("render_text: unknown template " + std::to_string(template_id));
  }
  RenderedDoc doc;
  for (const Piece& piece : templates()[template_id]) {
    if (piece.field == Field::none) {
      doc.text += piece.literal;
      continue;
    }
    const std::string value = field_value(r, piece.field);
    if (is_pii_field(piece.field)) {
      doc.spans.push_back(
          {doc.text.size(), doc.text.size() + value.size(), field_kind(piece.field), value});
    }
    doc.text += value;
  }
  return doc;
}

SplitResult split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw FormatError("split: train_fraction must be in (0, 1)");
  }
  const std::size_t n = ds.records.size();
  const std::size_t k = static_cast<std::size_t>(std::floor(train_fraction * n));
  if (k == 0 || k == n) throw FormatError("split: a side would be empty");

  Rng rng(seed);
  const std::vector<std::size_t> perm = rng.permutation(n);
  std::vector<bool> in_train(n, false);
  for (std::size_t i = 0; i < k; ++i) in_train[perm[i]] = true;

  SplitResult out;
  out.train.bounds = ds.bounds;
  out.holdout.bounds = ds.bounds;
  out.train.records.reserve(k);
  out.holdout.records.reserve(n - k);
  for (std::size_t i = 0; i < n; ++i) {
    (in_train[i] ? out.train : out.holdout).records.push_back(ds.records[i]);
  }
  return out;
}

void export_jsonl(const Dataset& ds, std::ostream& os) {
  for (const Record& r : ds.records) {
    nlohmann::json j{{"id", r.id},         {"name", r.name},       {"email", r.email},
                     {"ssn", r.ssn},       {"credit_card", r.credit_card},
                     {"phone", r.phone},   {"age", r.age},         {"income", r.income},
                     {"gender", r.gender}, {"condition", r.condition}};
    os << j.dump() << "\n";
  }
  if (!os) throw FormatError("export_jsonl: write failed");
}

Dataset import_jsonl(std::istream& is) {
  Dataset ds;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      Record r;
      r.id = j.at("id").get<std::uint64_t>();
      r.name = j.at("name").get<std::string>();
      r.email = j.at("email").get<std::string>();
      r.ssn = j.at("ssn").get<std::string>();
      r.credit_card = j.at("credit_card").get<std::string>();
      r.phone = j.at("phone").get<std::string>();
      r.age = j.at("age").get<int>();
      r.income = j.at("income").get<double>();
      r.gender = j.at("gender").get<int>();
      r.condition = j.at("condition").get<int>();
      ds.records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("import_jsonl: ") + e.what());
    }
  }
  return ds;
}

void export_feature_csv(const Dataset& ds, std::ostream& os) {
  os << "age_norm,income_norm,gender\n";
  const nn::Matrix x = ds.feature_view();
  char buf[64];
  for (std::size_t r = 0; r < x.rows; ++r) {
    for (std::size_t c = 0; c < x.cols; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", x(r, c));
      os << (c ? "," : "") << buf;
    }
    os << "\n";
  }
  if (!os) throw FormatError("export_feature_csv: write failed");
}

}  // namespace priv::synth

#include "toric/code.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "enumeration.hpp"
#include "toric/error.hpp"

namespace toric {

// ---------------------------------------------------------------- sections

void SectionPoly::add_term(const FieldSpec& f, LatticePoint m, FieldElement c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (c != f.zero()) terms_.emplace(m, c);
    return;
  }
  it->second = f.add(it->second, c);
  if (it->second == f.zero()) terms_.erase(it);
}

void SectionPoly::set_term(LatticePoint m, FieldElement c) {
  if (c.value == 0) {
    terms_.erase(m);
  } else {
    terms_[m] = c;
  }
}

LatticePolygon SectionPoly::newton_polygon() const {
  if (terms_.empty()) throw Error(ErrorKind::EmptyInput, "zero polynomial has no Newton polygon");
  std::vector<LatticePoint> support;
  support.reserve(terms_.size());
  for (const auto& [m, c] : terms_) support.push_back(m);
  return LatticePolygon::hull(support);
}

SectionPoly SectionPoly::multiply(const FieldSpec& f, const SectionPoly& other) const {
  SectionPoly r;
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) r.add_term(f, {a.x + b.x, a.y + b.y}, f.mul(ca, cb));
  }
  return r;
}

SectionPoly SectionPoly::scaled(const FieldSpec& f, FieldElement lambda, FieldElement mu) const {
  SectionPoly r;
  for (const auto& [m, c] : terms_) r.set_term(m, f.mul(c, f.mul(f.pow(lambda, m.x), f.pow(mu, m.y))));
  return r;
}

FieldElement SectionPoly::evaluate(const FieldSpec& f, std::int64_t i, std::int64_t j) const {
  const std::int64_t order = f.q() - 1;
  FieldElement sum = f.zero();
  for (const auto& [m, c] : terms_) {
    const std::int64_t e = (i % order) * (m.x % order) + (j % order) * (m.y % order);
    sum = f.add(sum, f.mul(c, f.exp(e)));
  }
  return sum;
}

std::string SectionPoly::to_string(const FieldSpec&) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c.value;
    if (m.x != 0) out << "*x^" << m.x;
    if (m.y != 0) out << "*y^" << m.y;
  }
  return out.str();
}

SectionPoly SectionPoly::constant(FieldElement c) { return monomial({0, 0}, c); }

SectionPoly SectionPoly::monomial(LatticePoint m, FieldElement c) {
  SectionPoly r;
  r.set_term(m, c);
  return r;
}

std::int64_t count_torus_zeros(const SectionPoly& s, const FieldSpec& f) {
  const std::int64_t order = f.q() - 1;
  if (s.is_zero()) return order * order;
  auto reduce = [order](std::int64_t v) { return ((v % order) + order) % order; };

  struct Term {
    std::int64_t base;  // log of the coefficient
    std::int64_t dx;
    std::int64_t dy;
  };
  std::vector<Term> terms;
  for (const auto& [m, c] : s.terms()) terms.push_back({f.log(c), reduce(m.x), reduce(m.y)});

  const auto exp = f.exp_table();
  std::int64_t zeros = 0;
  std::vector<std::int64_t> row(terms.size());
  for (std::int64_t i = 0; i < order; ++i) {
    for (std::size_t t = 0; t < terms.size(); ++t) row[t] = reduce(terms[t].base + i * terms[t].dx);
    for (std::int64_t j = 0; j < order; ++j) {
      FieldElement sum = f.zero();
      for (std::size_t t = 0; t < terms.size(); ++t) {
        sum = f.add(sum, FieldElement{exp[static_cast<std::size_t>(row[t])]});
        row[t] += terms[t].dy;
        if (row[t] >= order) row[t] -= order;
      }
      zeros += sum == f.zero();
    }
  }
  return zeros;
}

// ---------------------------------------------------------------- codes

namespace {

constexpr std::size_t kMaxGeneratorEntries = std::size_t{1} << 28;
constexpr double kMaxRankCheckWork = 2e9;

}  // namespace

ToricCode ToricCode::build(const LatticePolygon& p, const FieldSpec& f) {
  const auto shift = fits_in_box(p, f.q());
  if (!shift) {
    throw Error(ErrorKind::PolygonTooLargeForField,
                "polygon does not fit in [0," + std::to_string(f.q() - 2) + "]^2");
  }
  ToricCode c;
  c.field_ = f;
  c.original_ = p;
  c.translation_ = *shift;
  c.polygon_ = p.translated(*shift);
  c.monomials_ = c.polygon_.lattice_points();

  const std::size_t order = f.q() - 1;
  c.n_ = order * order;
  const std::size_t k = c.monomials_.size();
  if (k > kMaxGeneratorEntries / c.n_) throw Error(ErrorKind::TooLarge, "generator matrix too large");

  c.logs_.resize(k * c.n_);
  for (std::size_t r = 0; r < k; ++r) {
    const auto mx = static_cast<std::size_t>(c.monomials_[r].x);
    const auto my = static_cast<std::size_t>(c.monomials_[r].y);
    std::uint32_t* row = c.logs_.data() + r * c.n_;
    for (std::size_t i = 0; i < order; ++i) {
      for (std::size_t j = 0; j < order; ++j) row[i * order + j] = static_cast<std::uint32_t>((i * mx + j * my) % order);
    }
  }

  if (static_cast<double>(k) * static_cast<double>(k) * static_cast<double>(c.n_) <= kMaxRankCheckWork) {
    std::vector<std::vector<FieldElement>> rows(k, std::vector<FieldElement>(c.n_));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t t = 0; t < c.n_; ++t) rows[r][t] = c.generator(r, t);
    }
    if (matrix_rank(f, std::move(rows)) != k) {
      throw Error(ErrorKind::InvariantViolation, "generator matrix is rank deficient");
    }
  }
  return c;
}

std::vector<FieldElement> ToricCode::encode(const std::vector<FieldElement>& message) const {
  if (message.size() != k()) throw Error(ErrorKind::DegreeMismatch, "message length differs from dimension");
  std::vector<FieldElement> word(n_, field_.zero());
  for (std::size_t r = 0; r < k(); ++r) {
    if (message[r] == field_.zero()) continue;
    const std::uint32_t base = field_.log(message[r]);
    for (std::size_t t = 0; t < n_; ++t) {
      word[t] = field_.add(word[t], field_.exp(std::int64_t{base} + logs_[r * n_ + t]));
    }
  }
  return word;
}

std::vector<FieldElement> ToricCode::message_for_section(const SectionPoly& s) const {
  std::vector<FieldElement> message(k(), field_.zero());
  for (const auto& [m, c] : s.terms()) {
    const LatticePoint shifted{m.x + translation_.x, m.y + translation_.y};
    const auto it = std::lower_bound(monomials_.begin(), monomials_.end(), shifted);
    if (it == monomials_.end() || *it != shifted) {
      throw Error(ErrorKind::SupportOutsidePolygon,
                  "monomial (" + std::to_string(m.x) + "," + std::to_string(m.y) + ") is outside the polygon");
    }
    message[static_cast<std::size_t>(it - monomials_.begin())] = c;
  }
  return message;
}

std::string ToricCode::fingerprint() const {
  std::ostringstream out;
  out << "q=" << field_.q() << ";modulus=";
  for (std::size_t i = 0; i < field_.modulus().size(); ++i) out << (i ? "," : "") << field_.modulus()[i];
  out << ";polygon=";
  for (const auto& v : polygon_.vertices()) out << "(" << v.x << "," << v.y << ")";
  return out.str();
}

std::size_t hamming_weight(const std::vector<FieldElement>& word) {
  return static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [](FieldElement v) { return v.value != 0; }));
}

std::size_t matrix_rank(const FieldSpec& f, std::vector<std::vector<FieldElement>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == f.zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const FieldElement scale = f.inv(rows[rank][col]);
    for (auto& v : rows[rank]) v = f.mul(v, scale);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == f.zero()) continue;
      const FieldElement factor = rows[r][col];
      for (std::size_t t = col; t < cols; ++t) rows[r][t] = f.sub(rows[r][t], f.mul(factor, rows[rank][t]));
    }
    ++rank;
  }
  return rank;
}

std::int64_t weight_of_section(const SectionPoly& s, const ToricCode& c) {
  for (const auto& [m, coefficient] : s.terms()) {
    if (!c.original_polygon().contains(m)) {
      throw Error(ErrorKind::SupportOutsidePolygon,
                  "monomial (" + std::to_string(m.x) + "," + std::to_string(m.y) + ") is outside the polygon");
    }
  }
  return static_cast<std::int64_t>(c.n()) - count_torus_zeros(s, c.field());
}

std::uint64_t message_count(const ToricCode& c) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < c.k(); ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / c.field().q()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= c.field().q();
  }
  return total;
}

// ---------------------------------------------------------------- search

namespace {

struct Best {
  std::int64_t weight = std::numeric_limits<std::int64_t>::max();
  std::size_t chunk = 0;
  std::uint64_t step = 0;

  void absorb(std::int64_t w, std::size_t c, std::uint64_t t) {
    if (std::tie(w, c, t) < std::tie(weight, chunk, step)) {
      weight = w;
      chunk = c;
      step = t;
    }
  }
};

constexpr const char* kCheckpointFormat = "toricode.mindist-checkpoint.v1";

struct Checkpoint {
  std::vector<bool> done;
  Best best;
  std::uint64_t codewords = 0;
};

void write_checkpoint(const std::string& path, const std::string& fingerprint, const Checkpoint& state) {
  nlohmann::json ranges = nlohmann::json::array();
  for (std::size_t i = 0; i < state.done.size();) {
    if (!state.done[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < state.done.size() && state.done[j]) ++j;
    ranges.push_back({i, j});
    i = j;
  }
  nlohmann::json doc{{"format", kCheckpointFormat},
                     {"fingerprint", fingerprint},
                     {"chunks", state.done.size()},
                     {"done", ranges},
                     {"codewords", state.codewords}};
  if (state.best.weight != std::numeric_limits<std::int64_t>::max()) {
    doc["best"] = {{"weight", state.best.weight}, {"chunk", state.best.chunk}, {"step", state.best.step}};
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write checkpoint " + tmp);
    out << doc.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::string& path, const std::string& fingerprint, std::size_t chunks) {
  Checkpoint state;
  state.done.assign(chunks, false);
  std::ifstream in(path);
  if (!in) return state;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::ParseError, "checkpoint " + path + ": " + ex.what());
  }
  if (doc.value("format", "") != kCheckpointFormat || doc.value("fingerprint", "") != fingerprint ||
      doc.value("chunks", std::size_t{0}) != chunks) {
    throw Error(ErrorKind::ParseError, "checkpoint " + path + " belongs to a different search");
  }
  for (const auto& range : doc.at("done")) {
    const auto lo = range.at(0).get<std::size_t>();
    const auto hi = range.at(1).get<std::size_t>();
    if (lo > hi || hi > chunks) throw Error(ErrorKind::ParseError, "checkpoint range out of bounds");
    for (std::size_t i = lo; i < hi; ++i) state.done[i] = true;
  }
  state.codewords = doc.value("codewords", std::uint64_t{0});
  if (doc.contains("best")) {
    const auto& b = doc["best"];
    state.best.absorb(b.at("weight").get<std::int64_t>(), b.at("chunk").get<std::size_t>(),
                      b.at("step").get<std::uint64_t>());
  }
  return state;
}

unsigned worker_count(unsigned requested, std::size_t chunks) {
  unsigned threads = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(chunks, 1)));
}

}  // namespace

MinDistanceResult min_distance_exact(const ToricCode& c, const MinDistanceOptions& options) {
  const detail::Enumerator enumerator(c);
  const std::size_t chunks = enumerator.chunk_count();
  const std::string fingerprint = c.fingerprint() + ";low=" + std::to_string(enumerator.low_digits());

  Checkpoint state;
  if (!options.checkpoint_path.empty()) {
    state = read_checkpoint(options.checkpoint_path, fingerprint, chunks);
  } else {
    state.done.assign(chunks, false);
  }
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < chunks; ++i) {
    if (!state.done[i]) pending.push_back(i);
  }
  std::size_t finished = chunks - pending.size();

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto stop_at =
      options.deadline ? start + std::chrono::duration_cast<Clock::duration>(*options.deadline) : Clock::time_point::max();

  std::atomic<std::size_t> next{0};
  std::mutex lock;
  auto last_save = start;

  auto worker = [&]() {
    while (true) {
      if (Clock::now() >= stop_at) {
        return;
      }
      const std::size_t slot = next.fetch_add(1);
      if (slot >= pending.size()) return;
      const std::size_t chunk = pending[slot];
      const detail::ChunkOutcome out = enumerator.run(chunk, nullptr);

      const std::scoped_lock guard(lock);
      state.done[chunk] = true;
      state.codewords += out.steps;
      state.best.absorb(out.weight, chunk, out.step);
      ++finished;
      if (options.progress) options.progress(static_cast<double>(finished) / static_cast<double>(chunks));
      if (!options.checkpoint_path.empty() && Clock::now() - last_save > std::chrono::seconds(5)) {
        write_checkpoint(options.checkpoint_path, fingerprint, state);
        last_save = Clock::now();
      }
    }
  };

  const unsigned threads = worker_count(options.threads, pending.size());
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  if (!options.checkpoint_path.empty()) write_checkpoint(options.checkpoint_path, fingerprint, state);

  MinDistanceResult result;
  result.chunks_total = chunks;
  result.chunks_done = finished;
  result.codewords = state.codewords;
  result.exact = finished == chunks;
  if (state.best.weight == std::numeric_limits<std::int64_t>::max()) {
    result.distance = static_cast<std::int64_t>(c.n());
  } else {
    result.distance = state.best.weight;
    result.witness = enumerator.message(state.best.chunk, state.best.step);
  }
  return result;
}

std::map<std::int64_t, std::uint64_t> weight_distribution(const ToricCode& c, unsigned threads, std::uint64_t limit) {
  if (message_count(c) > limit) {
    throw Error(ErrorKind::TooLarge, "q^k exceeds the weight distribution limit");
  }
  const detail::Enumerator enumerator(c);
  const std::size_t chunks = enumerator.chunk_count();
  std::vector<std::uint64_t> total(c.n() + 1, 0);
  std::atomic<std::size_t> next{0};
  std::mutex lock;

  auto worker = [&]() {
    std::vector<std::uint64_t> local(c.n() + 1, 0);
    for (std::size_t chunk = next.fetch_add(1); chunk < chunks; chunk = next.fetch_add(1)) enumerator.run(chunk, &local);
    const std::scoped_lock guard(lock);
    for (std::size_t w = 0; w < local.size(); ++w) total[w] += local[w];
  };
  {
    std::vector<std::jthread> pool;
    const unsigned count = worker_count(threads, chunks);
    for (unsigned i = 1; i < count; ++i) pool.emplace_back(worker);
    worker();
  }

  std::map<std::int64_t, std::uint64_t> out{{0, 1}};
  for (std::size_t w = 0; w < total.size(); ++w) {
    if (total[w] != 0) out[static_cast<std::int64_t>(w)] += total[w] * (c.field().q() - 1);
  }
  return out;
}

}  // namespace toric

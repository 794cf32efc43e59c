import init, { shadow_diagram, hilbert_histogram, strata_report } from "./pkg/viennot_wasm.js";

const SVG = "http://www.w3.org/2000/svg";
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

function el(tag, attrs = {}, parent = null) {
  const node = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (parent) parent.appendChild(node);
  return node;
}

function fail(out, err) {
  out.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = String(err.message ?? err);
  out.appendChild(p);
}

function drawShadow(data, out) {
  const n = Math.max(data.n, 1);
  const cell = Math.min(48, 480 / n);
  const size = cell * (n + 1);
  const svg = el("svg", { width: size, height: size, viewBox: `0 0 ${size} ${size}` });
  // grid point (x, y) with y growing upward
  const px = (x) => x * cell;
  const py = (y) => size - y * cell;

  for (let i = 1; i <= n; i++) {
    el("line", { x1: px(i), y1: py(0.5), x2: px(i), y2: py(n + 0.5), stroke: "#eee" }, svg);
    el("line", { x1: px(0.5), y1: py(i), x2: px(n + 0.5), y2: py(i), stroke: "#eee" }, svg);
  }

  // shadow lines of the uncolored permutation, one shade per level
  data.levels.forEach((level, depth) => {
    const shade = `hsl(${30 + depth * 50}, 70%, 45%)`;
    for (const line of level.lines) {
      const pts = line.points;
      let d = `M ${px(pts[0][0])} ${py(n + 0.5)} L ${px(pts[0][0])} ${py(pts[0][1])}`;
      for (let k = 1; k < pts.length; k++) {
        d += ` L ${px(pts[k][0])} ${py(pts[k - 1][1])} L ${px(pts[k][0])} ${py(pts[k][1])}`;
      }
      d += ` L ${px(n + 0.5)} ${py(pts[pts.length - 1][1])}`;
      el("path", { d, fill: "none", stroke: shade, "stroke-width": 2, opacity: 0.8 }, svg);
    }
    for (const [x, y] of level.shadow_set) {
      el("rect", { x: px(x) - 4, y: py(y) - 4, width: 8, height: 8, fill: shade }, svg);
    }
  });

  for (const layer of data.layers) {
    for (const [x, y] of layer.points) {
      el("circle", { cx: px(x), cy: py(y), r: 6, fill: PALETTE[layer.color % PALETTE.length] }, svg);
    }
  }

  out.innerHTML = "";
  out.appendChild(svg);
  const pre = document.createElement("pre");
  const rows = (t) => t.map((r) => r.join(" ")).join("\n");
  pre.textContent = `w = ${data.w}\nP:\n${rows(data.p)}\nQ:\n${rows(data.q)}\nshadow monomial: ${data.monomial} (degree ${data.degree})`;
  out.appendChild(pre);
}

function drawHistogram(data, out) {
  const values = data.coefficients.map(Number);
  const max = Math.max(...values, 1);
  const w = 640, h = 260, pad = 30;
  const bar = (w - 2 * pad) / values.length;
  const svg = el("svg", { width: w, height: h });
  // violations are indexed by the statistic k; degree d = rn - k
  const top = data.n * data.r;
  const badDegrees = new Set(data.violations_k.map((k) => top - k));
  values.forEach((v, d) => {
    const bh = ((h - 2 * pad) * v) / max;
    el("rect", {
      x: pad + d * bar, y: h - pad - bh, width: Math.max(bar - 1, 1), height: bh,
      fill: badDegrees.has(d) ? "#d62728" : "#1f77b4",
    }, svg);
  });
  el("line", { x1: pad, y1: h - pad, x2: w - pad, y2: h - pad, stroke: "#333" }, svg);
  out.innerHTML = "";
  out.appendChild(svg);
  const p = document.createElement("p");
  p.textContent = `log-concave: ${data.log_concave}` +
    (data.violations_k.length ? ` (fails at k = ${data.violations_k.join(", ")})` : "") +
    `; unimodal: ${data.unimodal}; peak at k = ${data.peak_k}`;
  out.appendChild(p);
}

function drawStrata(data, out) {
  const table = document.createElement("table");
  table.innerHTML = "<tr><th>degree</th><th>labels (dim)</th><th>sum dim²</th><th>Hilbert</th></tr>";
  for (const row of data.rows) {
    const tr = document.createElement("tr");
    if (!row.match) tr.className = "bad";
    const labels = row.labels.map((l) => `${l.label} (${l.dim})`).join(", ");
    for (const text of [row.k, labels, row.sum_dim_sq, row.hilbert_coeff]) {
      const td = document.createElement("td");
      td.textContent = text;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  out.innerHTML = "";
  out.appendChild(table);
}

function wire(formId, outId, run) {
  const out = document.getElementById(outId);
  const go = () => {
    try {
      run(out);
    } catch (err) {
      fail(out, err);
    }
  };
  document.getElementById(formId).addEventListener("submit", (e) => {
    e.preventDefault();
    go();
  });
  go();
}

const num = (id) => Number(document.getElementById(id).value);

await init();
wire("shadow-form", "shadow-out", (out) =>
  drawShadow(JSON.parse(shadow_diagram(document.getElementById("word").value)), out));
wire("hilbert-form", "hilbert-out", (out) =>
  drawHistogram(JSON.parse(hilbert_histogram(num("h-n"), num("h-r"))), out));
wire("strata-form", "strata-out", (out) =>
  drawStrata(JSON.parse(strata_report(num("s-n"), num("s-r"))), out));

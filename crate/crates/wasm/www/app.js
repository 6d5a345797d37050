import init, { diagram, boundSweep, compareConfigs } from "./pkg/ddbnb_wasm.js";

const SVG = "http://www.w3.org/2000/svg";
const $ = (id) => document.getElementById(id);

function el(name, attrs = {}, text) {
  const node = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function instanceParams() {
  const f = new FormData($("instance"));
  return [f.get("problem"), Number(f.get("n")), Number(f.get("p")), Number(f.get("seed"))];
}

function guarded(action) {
  return (event) => {
    event?.preventDefault();
    $("error").textContent = "";
    try {
      action();
    } catch (e) {
      $("error").textContent = e.message ?? String(e);
    }
  };
}

function show(value) {
  return value === null ? "none" : value;
}

function drawDiagram() {
  const f = new FormData($("diagram-form"));
  const d = JSON.parse(diagram(...instanceParams(), f.get("kind"), Number(f.get("width"))));
  $("diagram-summary").textContent =
    `${d.kind} diagram: best value ${show(d.best_value)}, ` +
    `${d.exact ? "exact" : "approximate"}, last exact layer ${d.last_exact_layer}`;

  const svg = $("diagram");
  svg.replaceChildren();
  const widest = Math.max(...d.layers.map((l) => l.length));
  const dx = 78, dy = 70, r = 18;
  const width = Math.max(300, widest * dx + 40);
  svg.setAttribute("width", width);
  svg.setAttribute("height", d.layers.length * dy + 20);
  const pos = new Map();
  d.layers.forEach((layer, i) => {
    const offset = (width - layer.length * dx) / 2 + dx / 2;
    layer.forEach((u, j) => pos.set(u.id, [offset + j * dx, 30 + i * dy]));
  });

  for (const a of d.arcs) {
    const [x1, y1] = pos.get(a.from);
    const [x2, y2] = pos.get(a.to);
    svg.append(el("line", { x1, y1: y1 + r, x2, y2: y2 - r, class: a.best ? "arc best" : "arc" }));
    svg.append(el("text", { x: (x1 + x2) / 2 + 4, y: (y1 + y2) / 2 + 4 }, `${a.value}:${a.weight}`));
  }
  for (const layer of d.layers) {
    for (const u of layer) {
      const [cx, cy] = pos.get(u.id);
      const g = el("g");
      g.append(el("title", {}, `state ${u.label}\nvalue ${show(u.value)}` +
        (u.local_bound !== null ? `\nlocal bound ${show(u.local_bound)}` : "")));
      const cls = u.cutset ? "node cutset" : "node";
      g.append(el("circle", { cx, cy, r, class: cls }));
      if (!u.exact) g.append(el("circle", { cx, cy, r: r - 4, class: cls }));
      g.append(el("text", { x: cx, y: cy + 4, "text-anchor": "middle" }, show(u.value)));
      if (u.local_bound !== null) {
        g.append(el("text", { x: cx + r + 2, y: cy - r + 4 }, `≤${show(u.local_bound)}`));
      }
      svg.append(g);
    }
  }
}

function drawSweep() {
  const max = Number(new FormData($("sweep-form")).get("max"));
  const s = JSON.parse(boundSweep(...instanceParams(), max));
  $("sweep-summary").textContent =
    `optimum ${show(s.optimum)}${s.proved ? "" : " (not proved within the time limit)"}; ` +
    (s.minimize ? "relaxed values are lower bounds" : "relaxed values are upper bounds");

  const svg = $("sweep");
  svg.replaceChildren();
  const W = 640, H = 300, m = 40;
  const values = s.rows.flatMap((r) => [r.restricted, r.relaxed]).concat([s.optimum]).filter((v) => v !== null);
  const lo = Math.min(...values), hi = Math.max(...values);
  const x = (w) => m + ((w - 1) / Math.max(1, s.rows.length - 1)) * (W - 2 * m);
  const y = (v) => H - m - ((v - lo) / Math.max(1, hi - lo)) * (H - 2 * m);
  svg.append(el("line", { x1: m, y1: H - m, x2: W - m, y2: H - m, class: "axis" }));
  svg.append(el("line", { x1: m, y1: m, x2: m, y2: H - m, class: "axis" }));
  svg.append(el("text", { x: W / 2, y: H - 8, "text-anchor": "middle" }, "maximum width"));
  svg.append(el("text", { x: 4, y: y(hi) + 4 }, hi));
  svg.append(el("text", { x: 4, y: y(lo) + 4 }, lo));
  if (s.optimum !== null) {
    svg.append(el("line", { x1: m, x2: W - m, y1: y(s.optimum), y2: y(s.optimum), class: "series-optimum" }));
  }
  for (const series of ["restricted", "relaxed"]) {
    const pts = s.rows.filter((r) => r[series] !== null).map((r) => `${x(r.width)},${y(r[series])}`);
    svg.append(el("polyline", { points: pts.join(" "), class: `series-${series}` }));
    const last = s.rows[s.rows.length - 1];
    if (last[series] !== null) {
      svg.append(el("text", { x: W - m + 4, y: y(last[series]) + 4 }, series));
    }
  }
}

function drawComparison() {
  const width = Number(new FormData($("compare-form")).get("width"));
  const c = JSON.parse(compareConfigs(...instanceParams(), width));
  const body = $("compare").querySelector("tbody");
  body.replaceChildren();
  for (const r of c.rows) {
    const tr = document.createElement("tr");
    for (const v of [r.config, r.status, show(r.objective), show(r.bound), r.gap.toFixed(2), r.explored, r.seconds.toFixed(3)]) {
      const td = document.createElement("td");
      td.textContent = v;
      tr.append(td);
    }
    body.append(tr);
  }
}

await init();
$("diagram-form").addEventListener("submit", guarded(drawDiagram));
$("sweep-form").addEventListener("submit", guarded(drawSweep));
$("compare-form").addEventListener("submit", guarded(drawComparison));
$("instance").addEventListener("change", guarded(drawDiagram));
guarded(drawDiagram)();

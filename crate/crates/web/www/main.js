import init, { analyze_graph6, analyze_family, family_curve, families } from "./pkg/nbkemeny_web.js";

const TOL = 1e-8;
const $ = (id) => document.getElementById(id);

function showError(e) {
  let text = e instanceof Error ? e.message : String(e);
  try {
    const info = JSON.parse(text);
    text = `${info.code}: ${info.message}`;
  } catch (_) {
    // not a JSON error payload
  }
  $("error").textContent = text;
}

function fmt(x) {
  if (x === null || x === undefined) return "n/a";
  if (typeof x === "number") return Number.isInteger(x) ? String(x) : x.toPrecision(10);
  return String(x);
}

function showScalars(r) {
  const rows = [
    ["graph6", r.graph6],
    ["family", r.family ? JSON.stringify(r.family) : null],
    ["n, m", `${r.n}, ${r.m}`],
    ["classification", r.classification],
    ["edge-transitive", r.edge_transitive],
    ["K simple walk", r.kemeny_srw],
    ["K nb, hitting form", r.kemeny_nb_hitting],
    ["K nb, trace form", r.kemeny_nb_trace ?? (r.trace_error && r.trace_error.code)],
    ["K nb, edge space", r.kemeny_nb_edge],
    ["gap", r.gap],
    ["uniform return times", r.condition ? r.condition.holds : null],
    ["max spread", r.max_spread],
    ["nb error", r.nb_error && r.nb_error.code],
  ];
  if (r.closed_form) {
    rows.push(["closed form nb", r.closed_form.nb_value]);
    rows.push(["closed form simple", r.closed_form.srw_value]);
  }
  const table = $("scalars");
  table.replaceChildren();
  for (const [k, v] of rows) {
    const tr = table.insertRow();
    tr.insertCell().textContent = k;
    tr.insertCell().textContent = fmt(v);
  }
}

// Vertices on a circle, shaded by their spread in conditional return time.
function drawGraph(n, edges, spread) {
  const c = $("drawing");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  const cx = c.width / 2, cy = c.height / 2, rad = Math.min(cx, cy) - 24;
  const pos = Array.from({ length: n }, (_, i) => {
    const t = (2 * Math.PI * i) / n - Math.PI / 2;
    return [cx + rad * Math.cos(t), cy + rad * Math.sin(t)];
  });
  ctx.strokeStyle = "#888";
  for (const [u, v] of edges) {
    ctx.beginPath();
    ctx.moveTo(...pos[u]);
    ctx.lineTo(...pos[v]);
    ctx.stroke();
  }
  const top = spread ? Math.max(...spread, 1e-12) : 1;
  ctx.font = "11px sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  pos.forEach(([x, y], i) => {
    const s = spread ? spread[i] / top : 0;
    ctx.fillStyle = `rgb(${Math.round(60 + 180 * s)}, 90, ${Math.round(200 - 150 * s)})`;
    ctx.beginPath();
    ctx.arc(x, y, 9, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = "#fff";
    ctx.fillText(String(i), x, y);
  });
}

function showAnalysis(json) {
  const { edges, report } = JSON.parse(json);
  $("error").textContent = "";
  showScalars(report);
  drawGraph(report.n, edges, report.condition && report.condition.spread);
}

function plotCurve(points, vary) {
  const c = $("curve");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  if (points.length === 0) return;
  const pad = 40;
  const xs = points.map((p) => p.value);
  const ys = points.flatMap((p) => [p.srw, p.nb].filter((y) => y !== null));
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  const [y0, y1] = [0, Math.max(...ys)];
  const sx = (x) => pad + ((x - x0) / Math.max(x1 - x0, 1)) * (c.width - 2 * pad);
  const sy = (y) => c.height - pad - ((y - y0) / Math.max(y1 - y0, 1e-12)) * (c.height - 2 * pad);

  ctx.strokeStyle = "#444";
  ctx.beginPath();
  ctx.moveTo(pad, pad / 2);
  ctx.lineTo(pad, c.height - pad);
  ctx.lineTo(c.width - pad / 2, c.height - pad);
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.textAlign = "center";
  for (const x of xs) ctx.fillText(String(x), sx(x), c.height - pad + 14);
  ctx.fillText(vary, c.width / 2, c.height - 6);
  ctx.textAlign = "right";
  for (let k = 0; k <= 4; k++) {
    const y = y0 + ((y1 - y0) * k) / 4;
    ctx.fillText(y.toFixed(1), pad - 4, sy(y) + 3);
  }

  for (const [key, color] of [["srw", "#c62828"], ["nb", "#1565c0"]]) {
    const pts = points.filter((p) => p[key] !== null);
    ctx.strokeStyle = color;
    ctx.fillStyle = color;
    ctx.beginPath();
    pts.forEach((p, i) => (i ? ctx.lineTo(sx(p.value), sy(p[key])) : ctx.moveTo(sx(p.value), sy(p[key]))));
    ctx.stroke();
    for (const p of pts) {
      ctx.beginPath();
      ctx.arc(sx(p.value), sy(p[key]), 3, 0, 2 * Math.PI);
      ctx.fill();
    }
  }
}

function fillFamilies(list) {
  for (const id of ["family", "curve-family"]) {
    const sel = $(id);
    for (const f of list) {
      const opt = document.createElement("option");
      opt.value = f.family;
      opt.textContent = `${f.family} (${f.params.join(", ")})`;
      sel.append(opt);
    }
  }
  $("family").value = "pinwheel";
  $("curve-family").value = "cycle_barbell";
}

function guarded(fn) {
  return () => {
    try {
      fn();
    } catch (e) {
      showError(e);
    }
  };
}

await init();
fillFamilies(JSON.parse(families()));
$("run-g6").onclick = guarded(() => showAnalysis(analyze_graph6($("g6").value, TOL)));
$("run-family").onclick = guarded(() =>
  showAnalysis(analyze_family($("family").value, $("params").value, TOL)),
);
$("run-curve").onclick = guarded(() => {
  const vary = $("curve-vary").value.trim();
  const json = family_curve(
    $("curve-family").value,
    $("curve-params").value,
    vary,
    Number($("curve-from").value),
    Number($("curve-to").value),
  );
  $("error").textContent = "";
  plotCurve(JSON.parse(json), vary);
});
$("run-g6").click();
$("run-curve").click();

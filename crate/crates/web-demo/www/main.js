import init, { solve, ebWeights, trace } from "./pkg/bai_web_demo.js";

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"];

const $ = (id) => document.getElementById(id);
const fmt = (xs, d = 4) => Array.from(xs, (x) => x.toFixed(d)).join(" ");

function numbers(text) {
  const xs = text.trim().split(/[\s,]+/).filter(Boolean).map(Number);
  if (xs.some(Number.isNaN)) throw new Error(`not a list of numbers: ${text}`);
  return new Float64Array(xs);
}

function show(id, fn) {
  const out = $(id);
  try {
    out.textContent = fn();
    out.classList.remove("error");
  } catch (e) {
    out.textContent = e.message ?? String(e);
    out.classList.add("error");
  }
}

function runSolve() {
  show("solve-out", () => {
    const s = solve(numbers($("solve-means").value));
    const lines = [`w = ${fmt(s.weights)}`, `T = ${s.characteristicTime.toFixed(3)}`];
    if (s.degenerate) lines.push("several arms share the best mean");
    else lines.push(`Newton iterations: ${s.iterations}`);
    return lines.join("\n");
  });
}

function runEb() {
  show("eb-out", () => {
    const pairs = $("eb-intervals").value.trim().split(/\s+/).map((p) => numbers(p));
    if (pairs.some((p) => p.length !== 2)) throw new Error("each interval needs the form lo,hi");
    const r = ebWeights(new Float64Array(pairs.map((p) => p[0])), new Float64Array(pairs.map((p) => p[1])));
    return [
      r.uniform ? "intervals overlap: uniform weights" : "intervals separated",
      `mu~ = ${fmt(r.biasedBandit)}`,
      `w~ = ${fmt(r.weights)}`,
      `w_min = ${Math.min(...r.weights).toFixed(4)}`,
    ].join("\n");
  });
}

function plot(tr) {
  const canvas = $("trace-plot");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);

  const times = tr.times;
  const k = tr.numArms;
  const freqs = tr.frequencies;
  const targets = tr.targets;
  const tMax = Math.max(times[times.length - 1], 2);
  const x = (t) => pad + ((w - 2 * pad) * Math.log(t)) / Math.log(tMax);
  const y = (v) => h - pad - (h - 2 * pad) * v;

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#333";
  ctx.font = "11px sans-serif";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  for (const v of [0, 0.25, 0.5, 0.75, 1]) ctx.fillText(v.toFixed(2), 4, y(v) + 4);
  for (let t = 1; t <= tMax; t *= 10) ctx.fillText(String(t), x(t) - 4, h - pad + 14);

  const line = (values, arm, dashed) => {
    ctx.strokeStyle = COLORS[arm % COLORS.length];
    ctx.setLineDash(dashed ? [5, 4] : []);
    ctx.beginPath();
    for (let i = 0; i < times.length; i++) {
      const px = x(times[i]);
      const py = y(values[i * k + arm]);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    }
    ctx.stroke();
  };
  for (let a = 0; a < k; a++) {
    line(freqs, a, false);
    if (targets.length) line(targets, a, true);
    ctx.fillStyle = COLORS[a % COLORS.length];
    ctx.fillText(`arm ${a + 1}`, w - pad - 50, pad + 14 * a);
  }
  ctx.setLineDash([]);
}

function runTrace() {
  show("trace-out", () => {
    const tr = trace(
      numbers($("trace-means").value),
      $("trace-strategy").value,
      Number($("trace-delta").value),
      Number($("trace-gamma").value),
      Number($("trace-seed").value) >>> 0,
    );
    plot(tr);
    const last = tr.times.length - 1;
    const final = tr.frequencies.slice(last * tr.numArms);
    return [
      `stopped at t = ${tr.tau}${tr.truncated ? " (step limit reached)" : ""}`,
      `recommended arm ${tr.recommended + 1}`,
      `final frequencies ${fmt(final)}`,
    ].join("\n");
  });
}

await init();
$("solve-run").addEventListener("click", runSolve);
$("eb-run").addEventListener("click", runEb);
$("trace-run").addEventListener("click", runTrace);
runSolve();
runEb();
runTrace();

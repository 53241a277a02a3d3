import init, { generate_points, select, rng_edges } from "./pkg/dsel_edit_demo.js";

const canvas = document.getElementById("plot");
const ctx = canvas.getContext("2d");
const $ = (id) => document.getElementById(id);
const COLORS = ["#1f6fb2", "#d2691e"];

let points = { x: [], y: [] };
let mask = null;
let edges = null;
let view = { x0: -3, x1: 3, y0: -3, y1: 3 };

function fitView() {
  if (points.x.length === 0) return;
  const xs = points.x.map((p) => p[0]);
  const ys = points.x.map((p) => p[1]);
  const pad = (a, b) => 0.08 * (b - a || 1);
  const [ax, bx, ay, by] = [Math.min(...xs), Math.max(...xs), Math.min(...ys), Math.max(...ys)];
  view = { x0: ax - pad(ax, bx), x1: bx + pad(ax, bx), y0: ay - pad(ay, by), y1: by + pad(ay, by) };
}

const toScreen = ([x, y]) => [
  ((x - view.x0) / (view.x1 - view.x0)) * canvas.width,
  canvas.height - ((y - view.y0) / (view.y1 - view.y0)) * canvas.height,
];
const toData = (sx, sy) => [
  view.x0 + (sx / canvas.width) * (view.x1 - view.x0),
  view.y0 + ((canvas.height - sy) / canvas.height) * (view.y1 - view.y0),
];

function draw() {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (edges) {
    ctx.strokeStyle = "#ccc";
    ctx.beginPath();
    for (const [i, j] of edges) {
      const [ax, ay] = toScreen(points.x[i]);
      const [bx, by] = toScreen(points.x[j]);
      ctx.moveTo(ax, ay);
      ctx.lineTo(bx, by);
    }
    ctx.stroke();
  }
  points.x.forEach((p, i) => {
    const [sx, sy] = toScreen(p);
    const kept = !mask || mask[i];
    ctx.fillStyle = COLORS[points.y[i]];
    ctx.strokeStyle = COLORS[points.y[i]];
    ctx.globalAlpha = kept ? 1 : 0.25;
    ctx.beginPath();
    ctx.arc(sx, sy, kept && mask ? 5 : 3.5, 0, 2 * Math.PI);
    kept ? ctx.fill() : ctx.stroke();
  });
  ctx.globalAlpha = 1;
}

function invalidate() {
  mask = null;
  refreshGraph();
  draw();
}

function refreshGraph() {
  edges = null;
  if ($("graph").checked && points.x.length >= 2) {
    edges = JSON.parse(rng_edges(JSON.stringify(points)));
  }
}

function report(text) {
  $("stats").textContent = text;
}

$("gen").onclick = () => {
  try {
    points = JSON.parse(generate_points($("kind").value, Number($("n").value), BigInt($("seed").value)));
    fitView();
    invalidate();
    report(`${points.x.length} points`);
  } catch (e) {
    report(String(e));
  }
};

$("clear").onclick = () => {
  points = { x: [], y: [] };
  invalidate();
  report("Cleared.");
};

$("run").onclick = () => {
  if (points.x.length < 4) return report("Need at least 4 points.");
  try {
    const r = JSON.parse(select(JSON.stringify(points), $("method").value, BigInt($("seed").value)));
    mask = r.mask;
    draw();
    report(
      `${$("method").value}: kept ${r.retained} of ${points.x.length}\n` +
        `reduction   ${(100 * r.reduction).toFixed(1)} %\n` +
        `1NN acc.    ${(100 * r.accuracy).toFixed(1)} %\n` +
        `fitness     ${r.fitness.toFixed(4)}\n` +
        `time        ${r.millis.toFixed(1)} ms` +
        (r.below_guard ? "\nbelow the K = 7 guard: an experiment would keep the full set" : ""),
    );
  } catch (e) {
    report(String(e));
  }
};

$("graph").onchange = () => {
  refreshGraph();
  draw();
};

canvas.onclick = (ev) => {
  const rect = canvas.getBoundingClientRect();
  const p = toData(ev.clientX - rect.left, ev.clientY - rect.top);
  if (ev.shiftKey) {
    let best = -1;
    let bd = Infinity;
    points.x.forEach((q, i) => {
      const d = (q[0] - p[0]) ** 2 + (q[1] - p[1]) ** 2;
      if (d < bd) [bd, best] = [d, i];
    });
    if (best < 0) return;
    points.x.splice(best, 1);
    points.y.splice(best, 1);
  } else {
    points.x.push(p);
    points.y.push(Number(document.querySelector("input[name=cls]:checked").value));
  }
  invalidate();
};

await init();
$("gen").click();

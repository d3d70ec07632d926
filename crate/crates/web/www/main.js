import init, { compare_densities, sobolev_scaling, fit_coefficient } from "./pkg/lbh_web.js";

const $ = (id) => document.getElementById(id);

function medium() {
  return [$("kind").value, +$("a").value, +$("b").value, +$("beta").value];
}

// series: [{ x, y, color, label, dots }]
function plot(canvas, series, { logx = false, logy = false, xlabel = "", ylabel = "" } = {}) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, pad = 48;
  ctx.clearRect(0, 0, W, H);
  const tx = (v) => (logx ? Math.log10(v) : v);
  const ty = (v) => (logy ? Math.log10(v) : v);
  const xs = series.flatMap((s) => Array.from(s.x, tx));
  const ys = series.flatMap((s) => Array.from(s.y, ty)).filter(Number.isFinite);
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (x1 === x0) x1 = x0 + 1;
  if (y1 === y0) y1 = y0 + 1;
  const dy = 0.05 * (y1 - y0);
  y0 -= dy; y1 += dy;
  const px = (v) => pad + ((tx(v) - x0) / (x1 - x0)) * (W - 2 * pad);
  const py = (v) => H - pad + ((ty(v) - y0) / (y1 - y0)) * (2 * pad - H);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad / 2, W - 2 * pad, H - 1.5 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  const fmt = (v, log) => (log ? `1e${v.toFixed(1)}` : v.toPrecision(3));
  ctx.fillText(fmt(x0, logx), pad, H - pad + 14);
  ctx.fillText(fmt(x1, logx), W - pad - 30, H - pad + 14);
  ctx.fillText(fmt(y1, logy), 2, pad / 2 + 10);
  ctx.fillText(fmt(y0, logy), 2, H - pad);
  ctx.fillText(xlabel, W / 2, H - 8);
  ctx.fillText(ylabel, 2, H / 2);

  series.forEach((s, k) => {
    ctx.strokeStyle = ctx.fillStyle = s.color;
    ctx.beginPath();
    for (let i = 0; i < s.x.length; i++) {
      const [X, Y] = [px(s.x[i]), py(s.y[i])];
      i === 0 ? ctx.moveTo(X, Y) : ctx.lineTo(X, Y);
      if (s.dots) ctx.fillRect(X - 2, Y - 2, 4, 4);
    }
    ctx.stroke();
    ctx.fillText(s.label, W - pad - 150, pad / 2 + 14 + 14 * k);
  });
}

function guarded(out, fn) {
  return () => {
    out.classList.remove("err");
    out.textContent = "working...";
    // let the status text paint before the blocking solve
    setTimeout(() => {
      try {
        fn();
      } catch (e) {
        out.classList.add("err");
        out.textContent = String(e.message ?? e);
      }
    }, 10);
  };
}

function runComparison() {
  const r = compare_densities(...medium(), +$("cmp-eps").value, $("cmp-bump").checked);
  $("cmp-out").textContent =
    `L2 error ${r.l2_err.toExponential(3)}, ${r.cells} cells, ${r.iterations} iterations`;
  const x = r.x;
  plot($("cmp-plot"), [
    { x, y: r.kinetic, color: "#c33", label: "kinetic density" },
    { x, y: r.limit, color: "#36c", label: "diffusion limit" },
  ], { xlabel: "x" });
  r.free();
}

function runScaling() {
  const eps = new Float64Array($("sob-eps").value.split(",").map(Number));
  const r = sobolev_scaling(...medium(), eps);
  const verdict = r.satisfied ? "decays faster than ε" : "does not decay faster than ε";
  $("sob-out").textContent =
    `H^-1 slope ${r.minus_one_slope.toFixed(3)}, H^-1/2 slope ${r.minus_half_slope.toFixed(3)} (${verdict})`;
  plot($("sob-plot"), [
    { x: r.eps, y: r.minus_one, color: "#36c", label: "H^-1", dots: true },
    { x: r.eps, y: r.minus_half, color: "#c33", label: "H^-1/2", dots: true },
    { x: r.eps, y: r.eps, color: "#aaa", label: "ε", dots: false },
  ], { logx: true, logy: true, xlabel: "ε" });
  r.free();
}

function runFit() {
  const [kind, a, b, beta] = medium();
  const r = fit_coefficient(kind, a, b, beta, +$("fit-eps").value);
  $("fit-out").textContent =
    `s_hat ${r.s_hat.toFixed(4)}  (mean ${r.sigma_star.toFixed(4)}, harmonic ${r.sigma_harm.toFixed(4)})`;
  plot($("fit-plot"), [
    { x: r.scan_s, y: r.scan_objective, color: "#393", label: "misfit vs s", dots: true },
  ], { logx: true, logy: true, xlabel: "s" });
  r.free();
}

await init();
$("cmp-run").onclick = guarded($("cmp-out"), runComparison);
$("sob-run").onclick = guarded($("sob-out"), runScaling);
$("fit-run").onclick = guarded($("fit-out"), runFit);

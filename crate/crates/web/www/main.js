import init, { blochGrid, exploreTwoQubit, depolarizationPath } from "./pkg/stabgeo_web.js";

const $ = (id) => document.getElementById(id);
const status = (msg, err = false) => {
  $("status").textContent = msg;
  $("status").className = err ? "err" : "muted";
};
const fmt = (x, d = 4) => (typeof x === "number" ? x.toFixed(d) : String(x));

// viridis-like ramp
const RAMP = [[68, 1, 84], [59, 82, 139], [33, 145, 140], [94, 201, 98], [253, 231, 37]];
function color(t) {
  t = Math.min(1, Math.max(0, t)) * (RAMP.length - 1);
  const i = Math.min(RAMP.length - 2, Math.floor(t));
  const f = t - i;
  return RAMP[i].map((c, k) => Math.round(c + f * (RAMP[i + 1][k] - c)));
}

let grid = null;

function drawBloch() {
  const nt = Number($("bloch-res").value);
  const np = 2 * nt;
  status(`Computing ${nt * np} distances…`);
  setTimeout(() => {
    const t0 = performance.now();
    const values = blochGrid(nt, np);
    const max = Math.max(...values);
    grid = { nt, np, values, max };
    const cv = $("bloch");
    const ctx = cv.getContext("2d");
    const cw = cv.width / np;
    const ch = cv.height / (nt - 1);
    for (let i = 0; i < nt; i++) {
      for (let j = 0; j < np; j++) {
        const [r, g, b] = color(values[i * np + j] / max);
        ctx.fillStyle = `rgb(${r},${g},${b})`;
        ctx.fillRect(j * cw, (i - 0.5) * ch, cw + 1, ch + 1);
      }
    }
    const sc = $("bloch-scale").getContext("2d");
    for (let x = 0; x < 220; x++) {
      const [r, g, b] = color(x / 219);
      sc.fillStyle = `rgb(${r},${g},${b})`;
      sc.fillRect(x, 0, 1, 16);
    }
    $("bloch-min").textContent = "0";
    $("bloch-max").textContent = fmt(max);
    status(`Bloch grid: ${nt * np} certified solves in ${fmt((performance.now() - t0) / 1000, 2)} s.`);
  }, 10);
}

$("bloch").addEventListener("mousemove", (e) => {
  if (!grid) return;
  const cv = $("bloch");
  const rect = cv.getBoundingClientRect();
  const j = Math.min(grid.np - 1, Math.floor(((e.clientX - rect.left) / rect.width) * grid.np));
  const i = Math.min(grid.nt - 1, Math.round(((e.clientY - rect.top) / rect.height) * (grid.nt - 1)));
  const theta = (Math.PI * i) / (grid.nt - 1);
  const phi = (2 * Math.PI * j) / grid.np;
  $("bloch-hover").textContent = `θ = ${fmt(theta, 3)}, φ = ${fmt(phi, 3)}: distance ${fmt(grid.values[i * grid.np + j], 5)}`;
});
$("bloch-res").addEventListener("change", drawBloch);

const LABELS = ["|00⟩", "|01⟩", "|10⟩", "|11⟩"];
function buildAmps() {
  const box = $("amps");
  box.append(document.createElement("span"), text("Re"), text("Im"));
  for (let k = 0; k < 4; k++) {
    box.append(text(LABELS[k]));
    for (const part of ["re", "im"]) {
      const inp = document.createElement("input");
      inp.type = "number";
      inp.step = "0.05";
      inp.id = `a${k}${part}`;
      inp.value = "0";
      box.append(inp);
    }
  }
}
function text(s) {
  const el = document.createElement("span");
  el.textContent = s;
  return el;
}
function readAmps() {
  const parts = [];
  for (let k = 0; k < 4; k++) parts.push(Number($(`a${k}re`).value) || 0, Number($(`a${k}im`).value) || 0);
  return parts;
}
function setAmps(parts) {
  for (let k = 0; k < 4; k++) {
    $(`a${k}re`).value = +parts[2 * k].toFixed(6);
    $(`a${k}im`).value = +parts[2 * k + 1].toFixed(6);
  }
}

function tState() {
  const c = Math.cos(0.5 * Math.acos(1 / Math.sqrt(3)));
  const s = Math.sqrt(1 - c * c);
  return [[c, 0], [s * Math.SQRT1_2, s * Math.SQRT1_2]];
}
function gaussian() {
  const u = 1 - Math.random();
  return Math.sqrt(-2 * Math.log(u)) * Math.cos(2 * Math.PI * Math.random());
}
const PRESETS = {
  zero: () => [1, 0, 0, 0, 0, 0, 0, 0],
  bell: () => [Math.SQRT1_2, 0, 0, 0, 0, 0, Math.SQRT1_2, 0],
  tt: () => {
    const t = tState();
    const out = [];
    for (let k = 0; k < 4; k++) {
      const [a, b] = t[k >> 1];
      const [c, d] = t[k & 1];
      out.push(a * c - b * d, a * d + b * c);
    }
    return out;
  },
  random: () => Array.from({ length: 8 }, gaussian),
};

function explore() {
  try {
    const r = JSON.parse(exploreTwoQubit(readAmps()));
    setAmps(r.amplitudes.flat());
    const rows = [
      ["Trace distance", fmt(r.ntd, 5)],
      ["Certified gap", r.ntd_gap.toExponential(1)],
      ["Robustness", fmt(r.rom, 5)],
      ["Stabilizer Rényi-2 entropy", fmt(r.sre2, 5)],
      ["Entanglement entropy", fmt(r.entropy, 5)],
      ["Entanglement class", r.lu_class],
      ["CHSH value", fmt(r.chsh, 5)],
      ["Violated facets", `${r.violated} of 22320`],
    ];
    $("explore-out").innerHTML = rows.map(([k, v]) => `<tr><td>${k}</td><td>${v}</td></tr>`).join("");
    drawClasses(r.violated_by_class);
    status("Two-qubit state evaluated.");
  } catch (e) {
    status(String(e), true);
  }
}

function drawClasses(counts) {
  const cv = $("classes");
  const ctx = cv.getContext("2d");
  ctx.clearRect(0, 0, cv.width, cv.height);
  const max = Math.max(1, ...counts);
  const w = cv.width / counts.length;
  ctx.font = "11px system-ui";
  counts.forEach((c, k) => {
    const h = ((cv.height - 30) * c) / max;
    ctx.fillStyle = "#3b528b";
    ctx.fillRect(k * w + 6, cv.height - 16 - h, w - 12, h);
    ctx.fillStyle = "#222";
    ctx.fillText(String(k + 1), k * w + w / 2 - 3, cv.height - 3);
    ctx.fillText(String(c), k * w + 6, cv.height - 20 - h);
  });
}

function runPath() {
  try {
    let parts;
    if ($("path-state").value === "t") {
      parts = tState().flat();
    } else {
      parts = readAmps();
    }
    const r = JSON.parse(depolarizationPath(parts, $("path-mode").value, 41));
    drawPath(r);
    $("path-out").innerHTML =
      `<tr><td>Register</td><td>${r.system}</td></tr>` +
      `<tr><td>Critical noise</td><td>${fmt(r.critical, 5)}</td></tr>` +
      `<tr><td>Distance at p = 0</td><td>${fmt(r.ntd[0], 5)}</td></tr>`;
    status("Depolarization path computed.");
  } catch (e) {
    status(String(e), true);
  }
}

function drawPath(r) {
  const cv = $("path");
  const ctx = cv.getContext("2d");
  const [W, H, L, B] = [cv.width, cv.height, 46, 30];
  ctx.clearRect(0, 0, W, H);
  const ymax = Math.max(1e-9, ...r.ntd) * 1.1;
  const x = (p) => L + (W - L - 10) * p;
  const y = (v) => H - B - (H - B - 10) * (v / ymax);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(L, 10);
  ctx.lineTo(L, H - B);
  ctx.lineTo(W - 10, H - B);
  ctx.stroke();
  ctx.fillStyle = "#222";
  ctx.font = "11px system-ui";
  for (const p of [0, 0.25, 0.5, 0.75, 1]) ctx.fillText(String(p), x(p) - 8, H - B + 14);
  ctx.fillText("noise p", W / 2, H - 4);
  ctx.fillText(fmt(ymax, 3), 4, 14);
  ctx.fillText("0", 30, H - B);
  ctx.strokeStyle = "#21918c";
  ctx.lineWidth = 2;
  ctx.beginPath();
  r.p.forEach((p, k) => (k ? ctx.lineTo(x(p), y(r.ntd[k])) : ctx.moveTo(x(p), y(r.ntd[k]))));
  ctx.stroke();
  ctx.lineWidth = 1;
  ctx.strokeStyle = "#b00";
  ctx.setLineDash([5, 4]);
  ctx.beginPath();
  ctx.moveTo(x(r.critical), 10);
  ctx.lineTo(x(r.critical), H - B);
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.fillStyle = "#b00";
  ctx.fillText(`p* = ${fmt(r.critical, 4)}`, x(r.critical) + 4, 24);
}

async function main() {
  try {
    await init();
  } catch (e) {
    status(`Could not load the WebAssembly module: ${e}`, true);
    return;
  }
  buildAmps();
  setAmps(PRESETS.tt());
  document.querySelectorAll("[data-preset]").forEach((b) =>
    b.addEventListener("click", () => {
      setAmps(PRESETS[b.dataset.preset]());
      explore();
    }),
  );
  $("explore").addEventListener("click", explore);
  $("path-run").addEventListener("click", runPath);
  explore();
  runPath();
  drawBloch();
}

main();

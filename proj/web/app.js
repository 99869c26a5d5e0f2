"use strict";

const GRID = 64;
const state = { id: null, scene: null, sets: {}, verdict: null, orbit: null, layers: new Set(["curves", "regions", "singularities", "separatrices", "limit_cycles", "report"]) };
const canvas = document.getElementById("plane");
const ctx = canvas.getContext("2d");

function ratio(k) {
  return k % GRID === 0 ? String(k / GRID) : `${k}/${GRID}`;
}

function toFloat(s) {
  if (s === null) return null;
  const [p, q] = s.split("/");
  return q === undefined ? Number(p) : Number(p) / Number(q);
}

async function api(method, path, body) {
  for (;;) {
    const res = await fetch(path, { method, headers: { "Content-Type": "application/json" }, body: body && JSON.stringify(body) });
    const data = await res.json();
    if (res.status !== 202) return { status: res.status, data };
    await new Promise((r) => setTimeout(r, 300));
    path = data.poll;
    method = "GET";
    body = undefined;
  }
}

function query() {
  const sets = Object.entries(state.sets).map(([k, v]) => `set=${encodeURIComponent(k + ":" + v)}`);
  return sets.join("&");
}

function view() {
  const clip = state.scene ? state.scene.clip.float : 8;
  return {
    x: (u) => ((u + clip) / (2 * clip)) * canvas.width,
    y: (v) => ((clip - v) / (2 * clip)) * canvas.height,
    u: (x) => (x / canvas.width) * 2 * clip - clip,
    v: (y) => clip - (y / canvas.height) * 2 * clip,
  };
}

function polyline(points, color, width, dash) {
  const t = view();
  ctx.beginPath();
  points.forEach((p, i) => (i ? ctx.lineTo(t.x(p.float[0]), t.y(p.float[1])) : ctx.moveTo(t.x(p.float[0]), t.y(p.float[1]))));
  ctx.setLineDash(dash || []);
  ctx.strokeStyle = color;
  ctx.lineWidth = width;
  ctx.stroke();
  ctx.setLineDash([]);
}

function draw() {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const s = state.scene;
  if (!s) return;
  const t = view();
  for (const r of s.regions || []) {
    if (!state.layers.has("regions")) break;
    ctx.beginPath();
    r.polygon.forEach((p, i) => (i ? ctx.lineTo(t.x(p.float[0]), t.y(p.float[1])) : ctx.moveTo(t.x(p.float[0]), t.y(p.float[1]))));
    ctx.closePath();
    ctx.globalAlpha = 0.12;
    ctx.fillStyle = r.color;
    ctx.fill();
    ctx.globalAlpha = 1;
  }
  for (const e of s.curves || []) {
    if (e.layer === "TI") polyline([e.a, e.b], "black", 1.6, e.style === "dashed" ? [6, 4] : []);
    else if (state.layers.has("curves")) polyline([e.a, e.b], "#b0b0b0", 0.8);
  }
  const colors = { seed: "#1f4fd6", separatrix: "#8e44ad", "limit-cycle": "#d62728", "crossing-cycle": "#d62728" };
  for (const o of s.orbits || []) {
    if (o.role === "separatrix" && !state.layers.has("separatrices")) continue;
    polyline(o.vertices, colors[o.role] || "black", 1.4);
  }
  if (state.orbit) polyline(state.orbit.vertices, "#1f4fd6", 2);
  for (const q of s.singularities || []) {
    ctx.beginPath();
    ctx.arc(t.x(q.location.float[0]), t.y(q.location.float[1]), 4, 0, 2 * Math.PI);
    ctx.fillStyle = "white";
    ctx.fill();
    ctx.strokeStyle = "black";
    ctx.stroke();
  }
}

async function refresh() {
  if (!state.id) return;
  const { status, data } = await api("GET", `/api/tds/${state.id}/scene?${query()}&layers=all`);
  if (status !== 200) {
    document.getElementById("report").textContent = JSON.stringify(data, null, 1);
    return;
  }
  state.scene = data;
  const verdict = data.report ? data.report.overall : null;
  const ind = document.getElementById("indicator");
  ind.classList.toggle("fired", state.verdict !== null && verdict !== state.verdict);
  state.verdict = verdict;
  document.getElementById("report").textContent = data.report ? `${verdict}\n${data.report.witness}` : "";
  draw();
}

let timer = null;
function debounced() {
  clearTimeout(timer);
  timer = setTimeout(refresh, 150);
}

function buildSliders(tds) {
  const box = document.getElementById("sliders");
  box.querySelectorAll(".slider").forEach((n) => n.remove());
  state.sets = {};
  for (const p of tds.pairs) {
    if (p.alpha === null) continue;
    const row = document.createElement("div");
    row.className = "slider";
    const k0 = Math.round(toFloat(p.alpha) * GRID);
    const input = Object.assign(document.createElement("input"), { type: "range", min: k0 - 4 * GRID, max: k0 + 4 * GRID, step: 1, value: k0 });
    const label = document.createElement("span");
    label.textContent = p.alpha;
    input.addEventListener("input", () => {
      const v = ratio(Number(input.value));
      state.sets[p.index] = v;
      label.textContent = v;
      debounced();
    });
    row.append(Object.assign(document.createElement("span"), { textContent: `a${p.index}` }), input, label);
    box.append(row);
  }
}

function buildLayers() {
  const box = document.getElementById("layers");
  for (const name of ["curves", "regions", "separatrices"]) {
    const cb = Object.assign(document.createElement("input"), { type: "checkbox", checked: state.layers.has(name) });
    cb.addEventListener("change", () => {
      cb.checked ? state.layers.add(name) : state.layers.delete(name);
      draw();
    });
    const l = document.createElement("label");
    l.append(cb, ` ${name} `);
    box.append(l);
  }
}

async function load(name) {
  const { status, data } = await api("POST", "/api/tds", { preset: name });
  if (status !== 201) return;
  state.id = data.id;
  state.verdict = null;
  state.orbit = null;
  const tds = await api("GET", `/api/tds/${state.id}`);
  buildSliders(tds.data);
  refresh();
}

canvas.addEventListener("click", async (ev) => {
  if (!state.id) return;
  const t = view();
  const u = ratio(Math.round(t.u(ev.offsetX) * GRID));
  const v = ratio(Math.round(t.v(ev.offsetY) * GRID));
  const body = { start: [u, v], direction: "forward", set: Object.entries(state.sets).map(([k, a]) => `${k}:${a}`) };
  const { data } = await api("POST", `/api/tds/${state.id}/orbit`, body);
  state.orbit = data.vertices ? data : null;
  document.getElementById("orbit").textContent = data.vertices
    ? `${data.termination}\n` + data.vertices.map((p) => `(${p.exact[0]}, ${p.exact[1]})`).join("\n")
    : JSON.stringify(data);
  draw();
});

canvas.addEventListener("mousemove", (ev) => {
  const t = view();
  document.getElementById("hover").textContent = `u = ${t.u(ev.offsetX).toFixed(3)}, v = ${t.v(ev.offsetY).toFixed(3)}`;
});

(async () => {
  buildLayers();
  const { data } = await api("GET", "/api/presets");
  const sel = document.getElementById("preset");
  for (const p of data.presets) sel.append(Object.assign(document.createElement("option"), { value: p.name, textContent: p.name }));
  sel.addEventListener("change", () => load(sel.value));
  load(sel.value);
})();

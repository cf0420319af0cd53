// SVG rendering of a view model. Dots for vertices, arrowheads mid-edge
// for marks, muted strokes for unmarkable edges, a soft highlight on any
// cell that is one move from completion and on the winning cell.

import { EdgeView, ViewModel } from "./viewmodel.js";

const NS = "http://www.w3.org/2000/svg";

export interface RenderCallbacks {
  onEdgeClick(edge: EdgeView, x: number, y: number): void;
}

function el<K extends keyof SVGElementTagNameMap>(
  name: K, attrs: Record<string, string | number>): SVGElementTagNameMap[K] {
  const node = document.createElementNS(NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

export function renderBoard(svg: SVGSVGElement, vm: ViewModel,
                            positions: Map<number, [number, number]>,
                            cb: RenderCallbacks): void {
  svg.innerHTML = "";

  for (const cell of vm.completableCells) {
    svg.appendChild(cellPolygon(cell, positions, "cell-hot"));
  }

  for (const edge of vm.edges) {
    const group = el("g", {});
    const line = el("line", {
      x1: edge.x1, y1: edge.y1, x2: edge.x2, y2: edge.y2,
      class: edgeClass(edge),
    });
    group.appendChild(line);
    // a wide invisible hit area so the two halves are easy to click
    const hit = el("line", {
      x1: edge.x1, y1: edge.y1, x2: edge.x2, y2: edge.y2,
      class: "edge-hit",
    });
    if (edge.unmarkable) {
      const tip = el("title", {});
      tip.textContent = "unmarkable: either direction would make a sink or source";
      group.appendChild(tip);
    }
    hit.addEventListener("click", evt => {
      const pt = clientToSvg(svg, evt);
      cb.onEdgeClick(edge, pt[0], pt[1]);
    });
    group.appendChild(hit);
    if (edge.mark) group.appendChild(arrowHead(edge));
    svg.appendChild(group);
  }

  for (const v of vm.vertices) {
    svg.appendChild(el("circle", { cx: v.x, cy: v.y, r: 7, class: "vertex" }));
    const label = el("text", { x: v.x + 10, y: v.y - 10, class: "vertex-label" });
    label.textContent = String(v.id) + (v.exempt ? "*" : "");
    svg.appendChild(label);
  }
}

function edgeClass(edge: EdgeView): string {
  if (edge.inWonCell) return "edge won";
  if (edge.mark) return "edge marked";
  if (edge.unmarkable) return "edge unmarkable";
  return edge.clickable ? "edge open" : "edge";
}

function arrowHead(edge: EdgeView): SVGPolygonElement {
  // arrow drawn at the edge midpoint pointing toward the marked endpoint
  const [fx, fy, tx, ty] = edge.mark === "uv"
    ? [edge.x1, edge.y1, edge.x2, edge.y2]
    : [edge.x2, edge.y2, edge.x1, edge.y1];
  const mx = (fx + tx) / 2, my = (fy + ty) / 2;
  const len = Math.hypot(tx - fx, ty - fy) || 1;
  const ux = (tx - fx) / len, uy = (ty - fy) / len;
  const size = 9;
  const tipX = mx + ux * size, tipY = my + uy * size;
  const leftX = mx - uy * size * 0.6, leftY = my + ux * size * 0.6;
  const rightX = mx + uy * size * 0.6, rightY = my - ux * size * 0.6;
  return el("polygon", {
    points: `${tipX},${tipY} ${leftX},${leftY} ${rightX},${rightY}`,
    class: "arrow",
  });
}

function cellPolygon(cell: number[], positions: Map<number, [number, number]>,
                     cls: string): SVGPolygonElement {
  const points = cell
    .map(v => positions.get(v))
    .filter((p): p is [number, number] => p !== undefined)
    .map(([x, y]) => `${x},${y}`)
    .join(" ");
  return el("polygon", { points, class: cls });
}

function clientToSvg(svg: SVGSVGElement, evt: MouseEvent): [number, number] {
  const rect = svg.getBoundingClientRect();
  return [evt.clientX - rect.left, evt.clientY - rect.top];
}

export function toast(message: string): void {
  const host = document.getElementById("toast");
  if (!host) return;
  host.textContent = message;
  host.classList.add("show");
  window.setTimeout(() => host.classList.remove("show"), 2600);
}

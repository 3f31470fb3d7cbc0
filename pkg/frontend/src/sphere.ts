import { Trajectory, column } from "./csv.js";
import { PlotError } from "./types.js";
import { SvgCanvas, formatNumber, seriesColor } from "./svg.js";

// Fixed orthographic view; constants, not options, so output is stable.
const AZIMUTH = (-35 * Math.PI) / 180;
const ELEVATION = (22 * Math.PI) / 180;

const PANEL_WIDTH = 340;
const PANEL_HEIGHT = 380;
const MARGIN = 16;

// The drawn sphere is only honest if the data sits on it to within the
// stroke width; a trajectory further off than this fraction of the
// radius would be misrepresented, so the script refuses to draw it.
const RADIUS_TOLERANCE = 0.01;

interface Projected {
    u: number;
    v: number;
    depth: number;
}

function project(x: number, y: number, z: number): Projected {
    const sinA = Math.sin(AZIMUTH);
    const cosA = Math.cos(AZIMUTH);
    const sinE = Math.sin(ELEVATION);
    const cosE = Math.cos(ELEVATION);
    return {
        u: -x * sinA + y * cosA,
        v: -x * sinE * cosA - y * sinE * sinA + z * cosE,
        depth: x * cosE * cosA + y * cosE * sinA + z * sinE,
    };
}

export function sphereRadius(traj: Trajectory): number {
    // First-row casimir is the squared momentum norm at t0.
    return Math.sqrt(column(traj, "casimir")[0]);
}

// Largest deviation of the momentum norm from the drawn radius.
export function radiusDefect(traj: Trajectory): number {
    const m1 = column(traj, "M1");
    const m2 = column(traj, "M2");
    const m3 = column(traj, "M3");
    const r = sphereRadius(traj);
    let worst = 0;
    for (let k = 0; k < traj.rows; k++) {
        const defect = Math.abs(Math.hypot(m1[k], m2[k], m3[k]) - r);
        if (defect > worst) {
            worst = defect;
        }
    }
    return worst;
}

// Contiguous front/back runs of a projected curve, so hidden arcs can
// be drawn lighter without breaking the visible line.
function depthRuns(points: Projected[]): { front: Projected[][]; back: Projected[][] } {
    const front: Projected[][] = [];
    const back: Projected[][] = [];
    let run: Projected[] = [];
    let wasFront: boolean | null = null;
    const flush = () => {
        if (run.length >= 2) {
            (wasFront ? front : back).push(run);
        }
    };
    for (const p of points) {
        const isFront = p.depth >= 0;
        if (wasFront === null || isFront === wasFront) {
            run.push(p);
        } else {
            run.push(p);
            flush();
            run = [p];
        }
        wasFront = isFront;
    }
    flush();
    return { front, back };
}

function greatCircle(axis: "x" | "y" | "z", radius: number): Projected[] {
    const points: Projected[] = [];
    const n = 144;
    for (let k = 0; k <= n; k++) {
        const a = (2 * Math.PI * k) / n;
        const c = radius * Math.cos(a);
        const s = radius * Math.sin(a);
        if (axis === "z") {
            points.push(project(c, s, 0));
        } else if (axis === "x") {
            points.push(project(0, c, s));
        } else {
            points.push(project(s, 0, c));
        }
    }
    return points;
}

function drawPanel(svg: SvgCanvas, traj: Trajectory, index: number, originX: number): void {
    const r = sphereRadius(traj);
    const defect = radiusDefect(traj);
    if (defect > RADIUS_TOLERANCE * r) {
        throw new PlotError(
            `${traj.path}: trajectory strays ${formatNumber(defect, 3)} from the sphere of radius ` +
                `${formatNumber(r, 6)}; this is not an on-sphere trajectory`,
        );
    }

    const cx = originX + PANEL_WIDTH / 2;
    const cy = MARGIN + 24 + (PANEL_WIDTH - 2 * MARGIN) / 2;
    const scale = (PANEL_WIDTH / 2 - 2 * MARGIN) / (1.12 * r);
    const toScreen = (p: Projected): [number, number] => [cx + scale * p.u, cy - scale * p.v];

    svg.text(cx, MARGIN + 10, traj.label, 'font-size="13" text-anchor="middle" fill="#222"');

    // silhouette: the orthographic outline of a sphere is a circle of radius r
    svg.circle(cx, cy, scale * r, 'fill="#f7f9fc" stroke="#667" stroke-width="1.2"');
    for (const axis of ["x", "y", "z"] as const) {
        const runs = depthRuns(greatCircle(axis, r));
        for (const run of runs.back) {
            svg.polyline(run.map(toScreen), 'stroke="#c4ccd4" stroke-width="0.7" stroke-dasharray="3 3"');
        }
        for (const run of runs.front) {
            svg.polyline(run.map(toScreen), 'stroke="#9aa4ae" stroke-width="0.7"');
        }
    }

    const m1 = column(traj, "M1");
    const m2 = column(traj, "M2");
    const m3 = column(traj, "M3");
    const path: Projected[] = [];
    for (let k = 0; k < traj.rows; k++) {
        path.push(project(m1[k], m2[k], m3[k]));
    }
    const color = seriesColor(index);
    const runs = depthRuns(path);
    for (const run of runs.back) {
        svg.polyline(run.map(toScreen), `stroke="${color}" stroke-width="1.4" stroke-opacity="0.3"`);
    }
    for (const run of runs.front) {
        svg.polyline(run.map(toScreen), `stroke="${color}" stroke-width="1.4"`);
    }

    const [x0, y0] = toScreen(path[0]);
    const [xn, yn] = toScreen(path[path.length - 1]);
    svg.circle(x0, y0, 3, `fill="${color}" stroke="white" stroke-width="0.8"`);
    svg.circle(xn, yn, 3, `fill="white" stroke="${color}" stroke-width="1.4"`);

    svg.text(
        cx,
        PANEL_HEIGHT - MARGIN,
        `r = ${formatNumber(r, 6)}`,
        'font-size="11" text-anchor="middle" fill="#555"',
    );
}

// One panel per input trajectory, drawn on a shared canvas.
export function renderSphere(trajs: Trajectory[]): string {
    if (trajs.length === 0) {
        throw new PlotError("no trajectories to draw");
    }
    const svg = new SvgCanvas(PANEL_WIDTH * trajs.length, PANEL_HEIGHT);
    trajs.forEach((traj, i) => drawPanel(svg, traj, i, PANEL_WIDTH * i));
    return svg.render();
}

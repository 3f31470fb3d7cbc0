import { pathToFileURL } from "node:url";
import { readConvergence, renderLoglog } from "./loglog.js";
import { FigureSpec, PlotError, fileStem, validateSpec, writeOutput } from "./types.js";

const USAGE = "usage: plot_loglog <convergence.json|convergence.csv...> <out.svg>";

export function main(argv: string[]): number {
    try {
        if (argv.length < 2) {
            throw new PlotError(USAGE);
        }
        const inputs = argv.slice(0, -1);
        const out = argv[argv.length - 1];
        const spec: FigureSpec = { kind: "loglog", inputs, labels: inputs.map(fileStem), out };
        validateSpec(spec);
        const datasets = spec.inputs.map(readConvergence);
        writeOutput(spec.out, renderLoglog(datasets));
        console.log(`wrote ${spec.out}`);
        return 0;
    } catch (err) {
        if (err instanceof PlotError) {
            console.error(`error: ${err.message}`);
            return 1;
        }
        throw err;
    }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
    process.exit(main(process.argv.slice(2)));
}

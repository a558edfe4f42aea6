// Minimal ambient types for the slice of the yargs API used here (the
// installed yargs build ships without Node type declarations) and for the
// optional transformers dependency, which is loaded dynamically and may be
// absent at build time.

declare module "@xenova/transformers" {
  export function pipeline(task: string, model: string, options?: object): Promise<any>;
}

declare module "yargs" {
  interface Argv {
    scriptName(name: string): Argv;
    command(
      name: string,
      description: string,
      builder: (y: Argv) => Argv,
      handler: (argv: Record<string, unknown>) => void | Promise<void>,
    ): Argv;
    option(
      name: string,
      settings: {
        type: "string" | "number" | "boolean";
        demandOption?: boolean;
        default?: unknown;
        describe?: string;
      },
    ): Argv;
    demandCommand(min: number, message: string): Argv;
    strict(): Argv;
    fail(handler: (msg: string, err: Error | undefined) => void): Argv;
    help(): Argv;
    parseAsync(): Promise<Record<string, unknown>>;
  }
  function yargs(args: string[]): Argv;
  export default yargs;
}

declare module "yargs/helpers" {
  export function hideBin(argv: string[]): string[];
}
